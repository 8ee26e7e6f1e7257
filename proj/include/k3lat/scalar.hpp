#pragma once

// Exact scalar types and the dense matrix aliases used throughout the library.
//
// Integer and Rational are GMP-backed Boost.Multiprecision numbers with
// expression templates disabled, so they behave like plain value types inside
// Eigen containers.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace k3lat {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

using Index = Eigen::Index;

inline bool is_zero(const Integer& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

inline Integer num(const Rational& x) { return mp::numerator(x); }
inline Integer den(const Rational& x) { return mp::denominator(x); }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Floor of the square root of a nonnegative integer.
Integer isqrt(const Integer& n);

Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Parses "a", "-a", "a/b" (surrounding whitespace allowed).
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Least common multiple of the denominators of a rational vector.
Integer common_denominator(const RatVector& v);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

/// Fits in a signed 64-bit integer.
bool fits_int64(const Integer& x);

}  // namespace k3lat
