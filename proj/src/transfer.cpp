#include "k3lat/transfer.hpp"

#include "k3lat/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace k3lat {

namespace {

FieldElement omega(const FieldPtr& F, int k) {
  RatVector e = RatVector::Constant(F->degree(), Rational(0));
  e(k) = 1;
  return FieldElement::from_integral(F, e);
}

void check_field(const FieldPtr& F, const FieldElement& x) {
  if (x.field() && x.field() != F && x.field()->polynomial() != F->polynomial())
    throw Error(ErrorKind::InvalidInput, "entry belongs to a different field");
}

std::vector<FieldElement> diagonal(const NumberFieldLattice& M) {
  auto diag = congruence_diagonal(M.gram);
  for (const FieldElement& x : diag)
    if (x.is_zero()) throw Error(ErrorKind::DegenerateTransfer, "the O_F-form is degenerate");
  return diag;
}

std::string render(const std::vector<int>& v, const char* name) {
  std::ostringstream out;
  if (v.size() >= 3) {
    out << v.front() << "<=" << name << "<=" << v.back();
  } else if (v.size() == 2) {
    out << '"' << v[0] << ", " << v[1] << '"';
  } else if (v.size() == 1) {
    out << v[0];
  }
  return out.str();
}

}  // namespace

NumberFieldLattice make_nf_lattice(FieldPtr field, FieldMatrix gram) {
  if (!field) throw Error(ErrorKind::InvalidInput, "missing field");
  if (gram.rows() == 0 || gram.rows() != gram.cols()) throw Error(ErrorKind::InvalidInput, "Gram matrix must be square and nonempty");
  for (Index i = 0; i < gram.rows(); ++i)
    for (Index j = 0; j < gram.cols(); ++j) {
      check_field(field, gram(i, j));
      if (!(gram(i, j) == gram(j, i))) throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
    }
  return {std::move(field), std::move(gram)};
}

RatMatrix trace_gram(const NumberFieldLattice& M) {
  const FieldPtr& F = M.field;
  const int d = F->degree();
  const Index r = M.rank();
  std::vector<FieldElement> w;
  for (int k = 0; k < d; ++k) w.push_back(omega(F, k));
  RatMatrix g(r * d, r * d);
  for (Index i = 0; i < r; ++i)
    for (Index j = i; j < r; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const Rational t = (w[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(l)] * M.gram(i, j)).trace();
          g(i * d + k, j * d + l) = t;
          g(j * d + l, i * d + k) = t;
        }
  return g;
}

Lattice trace_lattice(const NumberFieldLattice& M) {
  diagonal(M);
  const RatMatrix g = trace_gram(M);
  IntMatrix out(g.rows(), g.cols());
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) {
      if (den(g(i, j)) != 1) throw Error(ErrorKind::InvalidInput, "trace form is not integral; entries must lie in O_F");
      out(i, j) = num(g(i, j));
    }
  return Lattice(out);
}

SignatureProfile signature_profile(const NumberFieldLattice& M) {
  const auto diag = diagonal(M);
  SignatureProfile profile(static_cast<std::size_t>(M.field->degree()));
  for (int k = 0; k < M.field->degree(); ++k)
    for (const FieldElement& x : diag) {
      // a nonzero field element is nonzero under every embedding
      if (x.sign(k) > 0) {
        ++profile[static_cast<std::size_t>(k)].p;
      } else {
        ++profile[static_cast<std::size_t>(k)].q;
      }
    }
  return profile;
}

bool ks_admissible(const NumberFieldLattice& M, std::optional<int> distinguished) {
  const int d = M.field->degree();
  const int r = static_cast<int>(M.rank());
  if (distinguished && (*distinguished < 0 || *distinguished >= d))
    throw Error(ErrorKind::InvalidInput, "embedding index out of range");
  if (r < 2) return false;
  const int m = r - 2;
  const SignatureProfile profile = signature_profile(M);
  auto fits = [&](int s) {
    for (int k = 0; k < d; ++k) {
      const Signature want = k == s ? Signature{2, m} : Signature{0, m + 2};
      if (!(profile[static_cast<std::size_t>(k)] == want)) return false;
    }
    return true;
  };
  bool ok = false;
  if (distinguished) {
    ok = fits(*distinguished);
  } else {
    for (int s = 0; s < d && !ok; ++s) ok = fits(s);
  }
  if (ok) {
    const Inertia in = inertia(trace_gram(M));
    if (in.positive != 2 || in.negative != d * (m + 2) - 2 || in.zero != 0)
      throw std::logic_error("trace lattice signature disagrees with the embedding profile");
  }
  return ok;
}

std::vector<FeasibilityRow> feasibility_table() {
  std::vector<FeasibilityRow> rows;
  for (int d = 2; 2 * d <= 21; ++d) {
    FeasibilityRow row{d, {}, {}};
    for (int m = 0; d * (m + 2) <= 21; ++m) {
      row.m.push_back(m);
      row.N.push_back(d * (m + 2) - 2);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string feasibility_csv(const std::vector<FeasibilityRow>& rows) {
  std::string out = "d,m,N\n";
  for (const FeasibilityRow& row : rows)
    out += std::to_string(row.d) + "," + render(row.m, "m") + "," + render(row.N, "N") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// quaternions

Quaternion QuaternionAlgebra::multiply(const Quaternion& x, const Quaternion& y) const {
  const FieldElement ab = a * b;
  return {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - ab * x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
          x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
          x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

Quaternion QuaternionAlgebra::conjugate(const Quaternion& x) { return {x[0], -x[1], -x[2], -x[3]}; }

FieldElement QuaternionAlgebra::reduced_trace(const Quaternion& x) { return x[0] * 2; }

FieldElement QuaternionAlgebra::reduced_norm(const Quaternion& x) const {
  return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

NumberFieldLattice quaternion_trace_zero(const FieldPtr& F, const FieldElement& a, const FieldElement& b,
                                         const std::array<Quaternion, 4>& order_basis) {
  if (!F) throw Error(ErrorKind::InvalidInput, "missing field");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::InvalidInput, "a and b must be nonzero");
  check_field(F, a);
  check_field(F, b);
  const QuaternionAlgebra B{a, b};

  FieldMatrix basis(4, 4);
  for (int s = 0; s < 4; ++s)
    for (int c = 0; c < 4; ++c) {
      check_field(F, order_basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)]);
      basis(c, s) = order_basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
    }
  auto in_order = [&](const Quaternion& q) {
    FieldMatrix rhs(4, 1);
    for (int c = 0; c < 4; ++c) rhs(c, 0) = q[static_cast<std::size_t>(c)];
    const auto coeff = solve<FieldElement>(basis, rhs);
    if (!coeff) throw Error(ErrorKind::NotAnOrder, "order basis is linearly dependent over F");
    for (int s = 0; s < 4; ++s)
      if (!(*coeff)(s, 0).is_integral()) return false;
    return true;
  };
  if (!in_order({FieldElement(1), FieldElement(0), FieldElement(0), FieldElement(0)}))
    throw Error(ErrorKind::NotAnOrder, "order does not contain 1");
  for (const Quaternion& x : order_basis)
    for (const Quaternion& y : order_basis)
      if (!in_order(B.multiply(x, y))) throw Error(ErrorKind::NotAnOrder, "order is not closed under multiplication");

  // kernel of the reduced trace on sum O_F b_s
  std::array<FieldElement, 4> t;
  for (int s = 0; s < 4; ++s) t[static_cast<std::size_t>(s)] = QuaternionAlgebra::reduced_trace(order_basis[static_cast<std::size_t>(s)]);
  int pivot = -1;
  for (int k = 0; k < 4 && pivot < 0; ++k) {
    if (t[static_cast<std::size_t>(k)].is_zero()) continue;
    bool divides = true;
    for (int l = 0; l < 4 && divides; ++l) divides = (t[static_cast<std::size_t>(l)] / t[static_cast<std::size_t>(k)]).is_integral();
    if (divides) pivot = k;
  }
  if (pivot < 0) throw Error(ErrorKind::UnsupportedOrder, "no order basis element has a trace dividing all others");

  std::vector<Quaternion> kernel;
  const Quaternion& bk = order_basis[static_cast<std::size_t>(pivot)];
  for (int l = 0; l < 4; ++l) {
    if (l == pivot) continue;
    const FieldElement f = t[static_cast<std::size_t>(l)] / t[static_cast<std::size_t>(pivot)];
    Quaternion v = order_basis[static_cast<std::size_t>(l)];
    for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] -= f * bk[static_cast<std::size_t>(c)];
    kernel.push_back(v);
  }

  FieldMatrix gram(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      gram(i, j) = QuaternionAlgebra::reduced_trace(
          B.multiply(kernel[static_cast<std::size_t>(i)], QuaternionAlgebra::conjugate(kernel[static_cast<std::size_t>(j)])));
  return make_nf_lattice(F, std::move(gram));
}

}  // namespace k3lat
