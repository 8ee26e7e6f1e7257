#pragma once

// Totally real number fields Q[x]/(p) with exact arithmetic in the power
// basis, certified real embeddings (Sturm isolation + bisection) and exact
// traces from Newton power sums.

#include "k3lat/scalar.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace k3lat {

/// Dense polynomial, coefficient i belongs to x^i; no trailing zeros.
using Poly = std::vector<Rational>;

int degree(const Poly& p);
Rational evaluate(const Poly& p, const Rational& x);
Poly derivative(const Poly& p);
/// Remainder of a modulo b (b != 0).
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic

/// Sturm sequence p, p', -rem(...), ...
std::vector<Poly> sturm_sequence(const Poly& p);
/// Number of distinct real roots in (a, b].
int count_roots(const std::vector<Poly>& sturm, const Rational& a, const Rational& b);

struct RootInterval {
  Rational lo, hi;  // the root lies in (lo, hi], or equals lo == hi
};

class FieldElement;

class TotallyRealField {
 public:
  /// poly: c_0..c_d of a monic integer polynomial, squarefree with d real
  /// roots. basis: row k is omega_k in the power basis; empty means the power
  /// basis. The Z-span of the basis must contain 1 and be closed under
  /// multiplication. Throws InvalidInput.
  TotallyRealField(std::vector<Integer> poly, RatMatrix basis = {});

  int degree() const { return d_; }
  const std::vector<Integer>& polynomial() const { return poly_; }
  const RatMatrix& integral_basis() const { return basis_; }

  /// Real roots in ascending order; sigma_k sends x to root k.
  const std::vector<RootInterval>& roots() const { return roots_; }

  /// Power-basis coordinates of a * b.
  RatVector multiply(const RatVector& a, const RatVector& b) const;
  RatMatrix multiplication_matrix(const RatVector& a) const;
  Rational trace(const RatVector& a) const;
  /// Sign of sigma_k(a), certified by interval refinement; throws
  /// PrecisionExhausted if the sign cannot be separated from zero.
  int sign(const RatVector& a, int k) const;
  double approximate(const RatVector& a, int k) const;

  /// Coordinates in the power basis of sum_k c_k omega_k.
  RatVector from_integral(const RatVector& c) const;
  /// Coordinates against the integral basis of a power-basis vector.
  RatVector to_integral(const RatVector& a) const;
  /// a lies in the Z-span of the integral basis.
  bool is_integral(const RatVector& a) const;

 private:
  RootInterval refined(int k, int bits) const;

  int d_;
  std::vector<Integer> poly_;
  Poly p_;
  RatMatrix basis_;
  RatMatrix to_integral_;  // (basis^T)^-1
  std::vector<Rational> power_sums_;  // tr(x^i), i < d
  std::vector<Poly> sturm_;
  std::vector<RootInterval> roots_;
  mutable std::mutex mutex_;
  mutable std::vector<RootInterval> refined_;  // narrowest interval seen per root
};

using FieldPtr = std::shared_ptr<const TotallyRealField>;

FieldPtr make_field(std::vector<Integer> poly, RatMatrix basis = {});

/// Element of F. A null field marks a rational constant, which combines with
/// elements of any field; this lets FieldElement act as an Eigen scalar.
class FieldElement {
 public:
  FieldElement() : FieldElement(0) {}
  FieldElement(long c) : FieldElement(Rational(c)) {}
  FieldElement(const Rational& c);
  FieldElement(FieldPtr field, RatVector coords);

  static FieldElement from_integral(const FieldPtr& field, const RatVector& c);

  const FieldPtr& field() const { return field_; }
  /// Power-basis coordinates (length d, or 1 for a constant).
  RatVector coordinates(int d) const;
  bool is_zero() const;
  bool is_integral() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator-(const FieldElement& a) { return FieldElement(0) - a; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  Rational trace() const;
  int sign(int k) const;

 private:
  void adopt(const FieldElement& o);

  FieldPtr field_;
  RatVector c_;
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }

using FieldMatrix = Matrix<FieldElement>;

}  // namespace k3lat

namespace Eigen {

template <>
struct NumTraits<k3lat::FieldElement> : GenericNumTraits<k3lat::FieldElement> {
  using Real = k3lat::FieldElement;
  using NonInteger = k3lat::FieldElement;
  using Nested = k3lat::FieldElement;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 50,
  };
};

}  // namespace Eigen
