#pragma once

// The Clifford algebra C(L) of a lattice, with rational coefficients.
//
// Basis monomials are sorted products e_S = e_{i_1} ... e_{i_k}, i_1 < ... < i_k,
// encoded as bitmasks (bit i is e_{i+1}). Relations: v w + w v = 2 (v, w).
// The Gram matrix need not be diagonal.

#include "k3lat/lattice.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>

namespace k3lat {

using Mask = std::uint32_t;
using Terms = std::map<Mask, Rational>;

inline int popcount(Mask m) { return __builtin_popcount(m); }

class CliffordAlgebra {
 public:
  /// Ranks above 31 throw RankTooLarge.
  explicit CliffordAlgebra(const Lattice& L);

  Index rank() const { return n_; }
  const Lattice& lattice() const { return lattice_; }
  const RatMatrix& gram() const { return gram_; }
  std::size_t dimension() const { return std::size_t{1} << n_; }

  /// e_S * e_T in normal form.
  Terms multiply(Mask s, Mask t) const;
  /// (e_S)^iota in normal form.
  Terms involution(Mask s) const;
  /// trace(L_{e_S}) / 2^rank.
  Rational normalized_trace(Mask s) const;

 private:
  const Terms& times_generator(Mask s, int j) const;

  Lattice lattice_;
  Index n_;
  RatMatrix gram_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Mask, int>, Terms> generator_cache_;
  mutable std::map<Mask, Terms> involution_cache_;
  mutable std::map<Mask, Rational> trace_cache_;
};

using AlgebraPtr = std::shared_ptr<const CliffordAlgebra>;

AlgebraPtr clifford_algebra(const Lattice& L);

enum class Parity { even, odd, mixed };

class CliffordElement {
 public:
  CliffordElement(AlgebraPtr algebra, Terms terms = {});

  static CliffordElement scalar(AlgebraPtr algebra, const Rational& c);
  static CliffordElement monomial(AlgebraPtr algebra, Mask s, const Rational& c = 1);
  /// 0-based generator e_{i+1}.
  static CliffordElement generator(AlgebraPtr algebra, Index i);
  /// sum_i v_i e_i for a coordinate vector of V.
  static CliffordElement vector(AlgebraPtr algebra, const RatVector& v);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  Rational coefficient(Mask s) const;
  Rational scalar_part() const { return coefficient(0); }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  /// Zero counts as even.
  Parity parity() const;

  CliffordElement& operator+=(const CliffordElement& o);
  CliffordElement& operator-=(const CliffordElement& o);
  CliffordElement& operator*=(const Rational& c);

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator-(CliffordElement a) { return a *= Rational(-1); }
  friend CliffordElement operator*(CliffordElement a, const Rational& c) { return a *= c; }
  friend CliffordElement operator*(const Rational& c, CliffordElement a) { return a *= c; }
  friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
  friend bool operator==(const CliffordElement& a, const CliffordElement& b);

 private:
  void check_ambient(const CliffordElement& o) const;

  AlgebraPtr algebra_;
  Terms terms_;
};

CliffordElement multiply(const CliffordElement& x, const CliffordElement& y);
CliffordElement main_involution(const CliffordElement& x);
/// Product of the basis vectors in order, e_1 e_2 ... e_n.
CliffordElement delta(AlgebraPtr algebra);
/// g g^iota.
CliffordElement spinor_norm(const CliffordElement& g);
/// Trace of left multiplication on C(L) (x) Q.
Rational trace(const CliffordElement& x);

/// Matrix of y -> x y (respectively y -> y x) on the monomial basis, columns
/// indexed by masks.
RatMatrix left_multiplication_matrix(const CliffordElement& x);
RatMatrix right_multiplication_matrix(const CliffordElement& x);

/// Throws NotInvertible, RankTooLarge (rank > 12).
CliffordElement invert(const CliffordElement& x);

/// g V g^{-1} = V, tested on each basis vector. Throws InvalidInput unless g
/// is even, NotInvertible when g is not a unit.
bool is_gspin(const CliffordElement& g);

/// `1/2*e{1,2} + 3*e{}` with 1-based indices; unsorted or repeated indices
/// are multiplied out. Throws InvalidInput.
CliffordElement parse_clifford(AlgebraPtr algebra, std::string_view text);
std::string to_string(const CliffordElement& x);

}  // namespace k3lat
