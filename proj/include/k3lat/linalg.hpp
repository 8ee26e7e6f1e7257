#pragma once

// Exact dense linear algebra over any field-like scalar.
//
// The templates below only touch coefficients through operator() and the
// field operations + - * / plus an ADL-visible is_zero(const Scalar&), so they
// work for Rational as well as for number-field elements.

#include "k3lat/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3lat {

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

namespace detail {

template <class Scalar>
void swap_rows_cols(Matrix<Scalar>& a, Index i, Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

}  // namespace detail

/// Diagonal of a matrix congruent to the symmetric matrix `a` (a = P D P^T).
///
/// Symmetric Gaussian elimination with diagonal pivoting. When every remaining
/// diagonal entry vanishes but an off-diagonal one does not, row/column j is
/// added to row/column k so the new pivot is 2 a(k,j) != 0.
template <class Scalar>
std::vector<Scalar> congruence_diagonal(Matrix<Scalar> a) {
  const Index n = a.rows();
  std::vector<Scalar> diag;
  diag.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    if (is_zero(a(k, k))) {
      Index swap_with = -1;
      for (Index j = k + 1; j < n && swap_with < 0; ++j)
        if (!is_zero(a(j, j))) swap_with = j;
      if (swap_with >= 0) {
        detail::swap_rows_cols(a, k, swap_with);
      } else {
        Index mix = -1;
        for (Index j = k + 1; j < n && mix < 0; ++j)
          if (!is_zero(a(k, j))) mix = j;
        if (mix >= 0) {
          for (Index c = 0; c < n; ++c) a(k, c) = a(k, c) + a(mix, c);
          for (Index r = 0; r < n; ++r) a(r, k) = a(r, k) + a(r, mix);
        }
      }
    }
    const Scalar pivot = a(k, k);
    diag.push_back(pivot);
    if (is_zero(pivot)) continue;  // row k is entirely zero
    for (Index i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const Scalar f = a(i, k) / pivot;
      for (Index c = k; c < n; ++c) a(i, c) = a(i, c) - f * a(k, c);
      for (Index r = k; r < n; ++r) a(r, i) = a(r, i) - f * a(r, k);
    }
  }
  return diag;
}

/// Sylvester inertia of a symmetric rational matrix, computed exactly.
inline Inertia inertia(const RatMatrix& a) {
  Inertia in;
  for (const Rational& d : congruence_diagonal(a)) {
    const int s = sign(d);
    if (s > 0) ++in.positive;
    else if (s < 0) ++in.negative;
    else ++in.zero;
  }
  return in;
}

inline Inertia inertia(const IntMatrix& a) { return inertia(to_rational(a)); }

/// Row echelon form in place; returns the pivot columns.
template <class Scalar>
std::vector<Index> row_echelon(Matrix<Scalar>& a) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index p = -1;
    for (Index r = row; r < a.rows(); ++r)
      if (!is_zero(a(r, col))) { p = r; break; }
    if (p < 0) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Scalar inv_pivot = Scalar(1) / a(row, col);
    for (Index c = col; c < a.cols(); ++c) a(row, c) = a(row, c) * inv_pivot;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < a.cols(); ++c) a(r, c) = a(r, c) - f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Index rank(Matrix<Scalar> a) {
  return static_cast<Index>(row_echelon(a).size());
}

/// Basis (as columns) of the right null space of `a`.
template <class Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> a) {
  const Index n = a.cols();
  const auto pivots = row_echelon(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> basis(n, n - static_cast<Index>(pivots.size()));
  for (Index r = 0; r < basis.rows(); ++r)
    for (Index c = 0; c < basis.cols(); ++c) basis(r, c) = Scalar(0);
  Index out = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(pivots[i], out) = Scalar(0) - a(static_cast<Index>(i), free);
    ++out;
  }
  return basis;
}

/// Some solution of a x = b for any shape of `a` (free variables set to 0);
/// nullopt when the system is inconsistent.
template <class Scalar>
std::optional<Matrix<Scalar>> solve_any(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const Index m = a.rows(), n = a.cols();
  Matrix<Scalar> aug(m, n + b.cols());
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < n; ++c) aug(r, c) = a(r, c);
    for (Index c = 0; c < b.cols(); ++c) aug(r, n + c) = b(r, c);
  }
  const auto pivots = row_echelon(aug);
  Matrix<Scalar> x(n, b.cols());
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < b.cols(); ++c) x(r, c) = Scalar(0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= n) return std::nullopt;
    for (Index c = 0; c < b.cols(); ++c) x(pivots[i], c) = aug(static_cast<Index>(i), n + c);
  }
  return x;
}

/// Solves a x = b for square nonsingular `a`; nullopt when singular.
template <class Scalar>
std::optional<Matrix<Scalar>> solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  Matrix<Scalar> aug(n, n + b.cols());
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) aug(r, c) = a(r, c);
    for (Index c = 0; c < b.cols(); ++c) aug(r, n + c) = b(r, c);
  }
  const auto pivots = row_echelon(aug);
  if (static_cast<Index>(pivots.size()) < n || (n > 0 && pivots.back() >= n)) return std::nullopt;
  Matrix<Scalar> x(n, b.cols());
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < b.cols(); ++c) x(r, c) = aug(r, n + c);
  return x;
}

template <class Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& a) {
  Matrix<Scalar> id(a.rows(), a.rows());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.rows(); ++c) id(r, c) = Scalar(r == c ? 1 : 0);
  return solve(a, id);
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

/// U * A * V = diag(d_0, ..., d_{r-1}, 0, ...), d_i | d_{i+1}, U and V unimodular.
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> diagonal;  // length min(rows, cols), nonnegative
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Integer basis (columns) of {x in Z^n : a x = 0}; automatically saturated.
IntMatrix integer_kernel(const IntMatrix& a);

/// Pfaffian of the antisymmetric matrix whose upper triangle is read from `a`.
Rational pfaffian_upper(const RatMatrix& a);

}  // namespace k3lat
