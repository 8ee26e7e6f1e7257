#pragma once

// Shared helpers and independent oracles for the test suites.

#include "k3lat/lattice.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <vector>

namespace k3lat::testing {

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index m = static_cast<Index>(rows.begin()->size());
  IntMatrix g(n, m);
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (long v : row) g(r, c++) = v;
    ++r;
  }
  return g;
}

inline Lattice lattice(std::initializer_list<std::initializer_list<long>> rows) {
  return Lattice(int_matrix(rows));
}

inline Lattice diagonal_lattice(std::initializer_list<long> diag) {
  const Index n = static_cast<Index>(diag.size());
  IntMatrix g = IntMatrix::Zero(n, n);
  Index i = 0;
  for (long v : diag) {
    g(i, i) = v;
    ++i;
  }
  return Lattice(std::move(g));
}

inline RatVector rat_vector(std::initializer_list<Rational> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

inline IntVector to_integer_coords(const RatVector& v) {
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = num(v(i));
  return out;
}

inline RatVector unit(Index n, Index i) {
  RatVector v = RatVector::Constant(n, Rational(0));
  v(i) = 1;
  return v;
}

/// Random symmetric integer matrix with diagonal in [dmin, dmax] and
/// off-diagonal entries in [-off, off].
inline IntMatrix random_symmetric(std::mt19937_64& rng, Index n, long dmin, long dmax, long off) {
  std::uniform_int_distribution<long> diag(dmin, dmax), o(-off, off);
  IntMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    g(i, i) = diag(rng);
    for (Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = o(rng);
  }
  return g;
}

/// Rational lower bound for the smallest eigenvalue of a positive-definite
/// Gram matrix: 1 / tr(G^-1) <= 1 / lambda_max(G^-1) = lambda_min(G).
inline Rational eigenvalue_lower_bound(const IntMatrix& g) {
  const RatMatrix inv = *inverse<Rational>(to_rational(g));
  Rational tr = 0;
  for (Index i = 0; i < inv.rows(); ++i) tr += inv(i, i);
  return Rational(1) / tr;
}

/// Box enumeration oracle: every y in Z^n with |y_i| <= R is tried, where R
/// comes from |x|^2 <= bound / lambda_min. Returns counts of norms of y + h.
inline std::map<Rational, long> box_norm_histogram(const Lattice& L, const RatVector& h, const Rational& bound) {
  const Index n = L.rank();
  const Rational lam = eigenvalue_lower_bound(L.gram());
  Rational hn = 0;
  for (Index i = 0; i < n; ++i) hn += h(i) * h(i);
  // |y| <= |x| + |h|, so R >= sqrt(bound / lam) + sqrt(|h|^2) + 1
  const long R = static_cast<long>(isqrt(ceil(bound / lam)).convert_to<long>() + isqrt(ceil(hn)).convert_to<long>() + 2);
  std::map<Rational, long> out;
  std::vector<long> y(static_cast<std::size_t>(n), -R);
  RatVector x(n);
  while (true) {
    for (Index i = 0; i < n; ++i) x(i) = Rational(y[static_cast<std::size_t>(i)]) + h(i);
    const Rational q = L.norm(x);
    if (q <= bound) ++out[q];
    std::size_t pos = 0;
    while (pos < y.size()) {
      if (++y[pos] <= R) break;
      y[pos] = -R;
      ++pos;
    }
    if (pos == y.size()) break;
  }
  return out;
}

/// Counts of E8 vectors by norm, computed in the coordinate model
/// D8 u (D8 + (1/2, ..., 1/2)) with the standard dot product. Entirely
/// independent of any Gram matrix. Returns counts for norms 0..bound.
inline std::vector<std::uint64_t> e8_coordinate_model_counts(int bound) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(bound) + 1, 0);
  // work with doubled coordinates y = 2x: integer part y even, half part y odd;
  // norm(x) = |y|^2 / 4; sum(x) even  <=>  sum(y) = 0 mod 4
  const int ymax = 2 * static_cast<int>(std::sqrt(static_cast<double>(bound))) + 2;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> y(8, 0);
    auto rec = [&](auto&& self, int pos, int sq, int sum) -> void {
      if (sq > 4 * bound) return;
      if (pos == 8) {
        if (((sum % 4) + 4) % 4 == 0 && sq % 4 == 0) ++counts[static_cast<std::size_t>(sq / 4)];
        return;
      }
      for (int v = -ymax; v <= ymax; ++v) {
        if (((v % 2) + 2) % 2 != parity) continue;
        self(self, pos + 1, sq + v * v, sum + v);
      }
    };
    rec(rec, 0, 0, 0);
  }
  return counts;
}

inline Integer divisor_sigma(long k, long n) {
  Integer s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += mp::pow(Integer(d), static_cast<unsigned>(k));
  return s;
}

}  // namespace k3lat::testing
