#include "k3lat/scalar.hpp"

#include "k3lat/errors.hpp"

#include <cctype>
#include <limits>

namespace k3lat {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::InvalidScale: return "InvalidScale";
    case ErrorKind::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorKind::NotInDualLattice: return "NotInDualLattice";
    case ErrorKind::IndefiniteLattice: return "IndefiniteLattice";
    case ErrorKind::NegativeTarget: return "NegativeTarget";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::InvalidTau: return "InvalidTau";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::TooManyTerms: return "TooManyTerms";
    case ErrorKind::OddLatticeUnsupported: return "OddLatticeUnsupported";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::NotNegativePlane: return "NotNegativePlane";
    case ErrorKind::IndefinitePlane: return "IndefinitePlane";
    case ErrorKind::BadSplitting: return "BadSplitting";
    case ErrorKind::BadPolarizer: return "BadPolarizer";
    case ErrorKind::DegenerateTransfer: return "DegenerateTransfer";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotAnOrder: return "NotAnOrder";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return mp::abs(a / mp::gcd(a, b) * b);
}

Integer isqrt(const Integer& n) {
  if (n.sign() < 0) throw Error(ErrorKind::InvalidInput, "isqrt of a negative integer");
  return mp::sqrt(n);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

Integer floor(const Rational& x) { return floor_div(num(x), den(x)); }

Integer ceil(const Rational& x) { return -floor_div(-num(x), den(x)); }

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.empty()) throw Error(ErrorKind::InvalidInput, "empty rational literal");

  auto parse_int = [](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw Error(ErrorKind::InvalidInput, "malformed integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k])))
        throw Error(ErrorKind::InvalidInput, "malformed integer '" + std::string(s) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer n = parse_int(text.substr(0, slash));
  Integer d = parse_int(text.substr(slash + 1));
  if (d.is_zero()) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (Index i = 0; i < v.size(); ++i) d = lcm(d, den(v(i)));
  return d;
}

RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }
RatVector to_rational(const IntVector& v) { return v.cast<Rational>(); }

bool fits_int64(const Integer& x) {
  static const Integer lo(std::numeric_limits<std::int64_t>::min());
  static const Integer hi(std::numeric_limits<std::int64_t>::max());
  return x >= lo && x <= hi;
}

}  // namespace k3lat
