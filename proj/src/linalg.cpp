#include "k3lat/linalg.hpp"

#include "k3lat/errors.hpp"

namespace k3lat {

Integer determinant(const IntMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  Integer sign_flip = 1;
  Integer prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      Index p = -1;
      for (Index r = k + 1; r < n; ++r)
        if (!a(r, k).is_zero()) { p = r; break; }
      if (p < 0) return Integer(0);
      a.row(k).swap(a.row(p));
      sign_flip = -sign_flip;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;  // exact
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign_flip * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  for (Index k = 0; k < n; ++k) {
    Index p = -1;
    for (Index r = k; r < n; ++r)
      if (!a(r, k).is_zero()) { p = r; break; }
    if (p < 0) return Rational(0);
    if (p != k) {
      a.row(k).swap(a.row(p));
      det = -det;
    }
    det *= a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Rational f = a(i, k) / a(k, k);
      for (Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

namespace {

IntMatrix identity(Index n) {
  IntMatrix id(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) id(r, c) = (r == c) ? 1 : 0;
  return id;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix u = identity(m);
  IntMatrix v = identity(n);
  const Index steps = std::min(m, n);

  for (Index t = 0; t < steps; ++t) {
    bool finished = false;
    while (true) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      Index pr = -1, pc = -1;
      for (Index r = t; r < m; ++r)
        for (Index c = t; c < n; ++c)
          if (!d(r, c).is_zero() && (pr < 0 || mp::abs(d(r, c)) < mp::abs(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr < 0) {
        finished = true;
        break;
      }
      if (pr != t) {
        d.row(t).swap(d.row(pr));
        u.row(t).swap(u.row(pr));
      }
      if (pc != t) {
        d.col(t).swap(d.col(pc));
        v.col(t).swap(v.col(pc));
      }

      bool clean = true;
      for (Index r = t + 1; r < m; ++r) {
        if (d(r, t).is_zero()) continue;
        const Integer q = floor_div(d(r, t), d(t, t));
        d.row(r) -= q * d.row(t);
        u.row(r) -= q * u.row(t);
        if (!d(r, t).is_zero()) clean = false;
      }
      for (Index c = t + 1; c < n; ++c) {
        if (d(t, c).is_zero()) continue;
        const Integer q = floor_div(d(t, c), d(t, t));
        d.col(c) -= q * d.col(t);
        v.col(c) -= q * v.col(t);
        if (!d(t, c).is_zero()) clean = false;
      }
      if (!clean) continue;

      Index bad_row = -1;
      for (Index r = t + 1; r < m && bad_row < 0; ++r)
        for (Index c = t + 1; c < n; ++c)
          if (d(r, c) % d(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (bad_row < 0) break;
      d.row(t) += d.row(bad_row);
      u.row(t) += u.row(bad_row);
    }
    if (finished) break;
    if (d(t, t).sign() < 0) {
      d.row(t) *= Integer(-1);
      u.row(t) *= Integer(-1);
    }
  }

  SmithForm out;
  out.U = std::move(u);
  out.V = std::move(v);
  out.diagonal.reserve(static_cast<std::size_t>(steps));
  for (Index t = 0; t < steps; ++t) out.diagonal.push_back(d(t, t));
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithForm snf = smith_normal_form(a);
  Index r = 0;
  for (const Integer& x : snf.diagonal)
    if (!x.is_zero()) ++r;
  return snf.V.rightCols(a.cols() - r);
}

Rational pfaffian_upper(const RatMatrix& upper) {
  const Index n = upper.rows();
  if (n % 2 == 1) return Rational(0);
  RatMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = 0;
    for (Index j = i + 1; j < n; ++j) {
      a(i, j) = upper(i, j);
      a(j, i) = -upper(i, j);
    }
  }
  Rational pf = 1;
  for (Index k = 0; k < n; k += 2) {
    Index p = -1;
    for (Index j = k + 1; j < n; ++j)
      if (!a(k, j).is_zero()) { p = j; break; }
    if (p < 0) return Rational(0);
    if (p != k + 1) {
      detail::swap_rows_cols(a, k + 1, p);
      pf = -pf;
    }
    pf *= a(k, k + 1);
    for (Index i = k + 2; i < n; ++i) {
      if (!a(k, i).is_zero()) {
        const Rational c = a(k, i) / a(k, k + 1);
        a.row(i) -= c * a.row(k + 1);
        a.col(i) -= c * a.col(k + 1);
      }
      if (!a(k + 1, i).is_zero()) {
        const Rational c = a(k + 1, i) / a(k + 1, k);
        a.row(i) -= c * a.row(k);
        a.col(i) -= c * a.col(k);
      }
    }
  }
  return pf;
}

}  // namespace k3lat
