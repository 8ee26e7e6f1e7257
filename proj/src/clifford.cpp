#include "k3lat/clifford.hpp"

#include "k3lat/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace k3lat {

namespace {

constexpr Index kMaxRank = 31;
constexpr Index kMaxDenseRank = 12;

void add_to(Terms& acc, Mask m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

int top_bit(Mask m) { return 31 - __builtin_clz(m); }

}  // namespace

CliffordAlgebra::CliffordAlgebra(const Lattice& L) : lattice_(L), n_(L.rank()), gram_(to_rational(L.gram())) {
  if (n_ > kMaxRank) throw Error(ErrorKind::RankTooLarge, "Clifford algebras are limited to rank 31");
}

// e_S e_j with s = max S, S = S' u {s}:
//   j > s : e_{S u {j}}
//   j = s : (e_j, e_j) e_{S'}
//   j < s : 2 (e_s, e_j) e_{S'} - (e_{S'} e_j) e_s, and every monomial of
//           e_{S'} e_j lies below s, so the last factor just appends s.
const Terms& CliffordAlgebra::times_generator(Mask s, int j) const {
  const auto key = std::make_pair(s, j);
  {
    std::lock_guard lock(mutex_);
    const auto it = generator_cache_.find(key);
    if (it != generator_cache_.end()) return it->second;
  }
  Terms out;
  const Mask bit = Mask{1} << j;
  if (s == 0) {
    out.emplace(bit, Rational(1));
  } else {
    const int top = top_bit(s);
    const Mask rest = s & ~(Mask{1} << top);
    if (j > top) {
      out.emplace(s | bit, Rational(1));
    } else if (j == top) {
      add_to(out, rest, gram_(j, j));
    } else {
      add_to(out, rest, 2 * gram_(top, j));
      for (const auto& [m, c] : times_generator(rest, j)) add_to(out, m | (Mask{1} << top), -c);
    }
  }
  std::lock_guard lock(mutex_);
  return generator_cache_.emplace(key, std::move(out)).first->second;
}

Terms CliffordAlgebra::multiply(Mask s, Mask t) const {
  Terms acc{{s, Rational(1)}};
  for (Mask rest = t; rest != 0; rest &= rest - 1) {
    const int j = __builtin_ctz(rest);
    Terms next;
    for (const auto& [m, c] : acc)
      for (const auto& [m2, c2] : times_generator(m, j)) add_to(next, m2, c * c2);
    acc = std::move(next);
  }
  return acc;
}

Terms CliffordAlgebra::involution(Mask s) const {
  {
    std::lock_guard lock(mutex_);
    const auto it = involution_cache_.find(s);
    if (it != involution_cache_.end()) return it->second;
  }
  // e_{i_k} ... e_{i_1}
  Terms acc{{Mask{0}, Rational(1)}};
  for (Mask rest = s; rest != 0;) {
    const int j = top_bit(rest);
    rest &= ~(Mask{1} << j);
    Terms next;
    for (const auto& [m, c] : acc)
      for (const auto& [m2, c2] : times_generator(m, j)) add_to(next, m2, c * c2);
    acc = std::move(next);
  }
  std::lock_guard lock(mutex_);
  return involution_cache_.emplace(s, std::move(acc)).first->second;
}

// The normalized trace is the linear form with tau(1) = 1 and tau(xy) = tau(yx);
// on a product of vectors it expands over perfect matchings, i.e. a Pfaffian.
Rational CliffordAlgebra::normalized_trace(Mask s) const {
  if (s == 0) return 1;
  if (popcount(s) % 2 == 1) return 0;
  {
    std::lock_guard lock(mutex_);
    const auto it = trace_cache_.find(s);
    if (it != trace_cache_.end()) return it->second;
  }
  std::vector<Index> idx;
  for (Mask rest = s; rest != 0; rest &= rest - 1) idx.push_back(__builtin_ctz(rest));
  const Index k = static_cast<Index>(idx.size());
  RatMatrix sub(k, k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) sub(a, b) = gram_(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  const Rational pf = pfaffian_upper(sub);
  std::lock_guard lock(mutex_);
  trace_cache_.emplace(s, pf);
  return pf;
}

AlgebraPtr clifford_algebra(const Lattice& L) { return std::make_shared<const CliffordAlgebra>(L); }

// ---------------------------------------------------------------------------

CliffordElement::CliffordElement(AlgebraPtr algebra, Terms terms) : algebra_(std::move(algebra)) {
  if (!algebra_) throw Error(ErrorKind::InvalidInput, "Clifford element without an algebra");
  const Mask full = static_cast<Mask>((std::uint64_t{1} << algebra_->rank()) - 1);
  for (auto& [m, c] : terms) {
    if ((m & ~full) != 0) throw Error(ErrorKind::InvalidInput, "monomial index out of range");
    if (!c.is_zero()) terms_.emplace(m, std::move(c));
  }
}

CliffordElement CliffordElement::scalar(AlgebraPtr algebra, const Rational& c) {
  return CliffordElement(std::move(algebra), Terms{{Mask{0}, c}});
}

CliffordElement CliffordElement::monomial(AlgebraPtr algebra, Mask s, const Rational& c) {
  return CliffordElement(std::move(algebra), Terms{{s, c}});
}

CliffordElement CliffordElement::generator(AlgebraPtr algebra, Index i) {
  if (i < 0 || i >= algebra->rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
  return monomial(std::move(algebra), Mask{1} << i);
}

CliffordElement CliffordElement::vector(AlgebraPtr algebra, const RatVector& v) {
  if (v.size() != algebra->rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match rank");
  Terms t;
  for (Index i = 0; i < v.size(); ++i) add_to(t, Mask{1} << i, v(i));
  return CliffordElement(std::move(algebra), std::move(t));
}

Rational CliffordElement::coefficient(Mask s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

Parity CliffordElement::parity() const {
  bool even = false, odd = false;
  for (const auto& [m, c] : terms_) (popcount(m) % 2 == 0 ? even : odd) = true;
  if (even && odd) return Parity::mixed;
  return odd ? Parity::odd : Parity::even;
}

void CliffordElement::check_ambient(const CliffordElement& o) const {
  if (algebra_ != o.algebra_ && algebra_->gram() != o.algebra_->gram())
    throw Error(ErrorKind::AmbientMismatch, "Clifford elements belong to different lattices");
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
  check_ambient(o);
  for (const auto& [m, c] : o.terms_) add_to(terms_, m, c);
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
  check_ambient(o);
  for (const auto& [m, c] : o.terms_) add_to(terms_, m, -c);
  return *this;
}

CliffordElement& CliffordElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
  a.check_ambient(b);
  const CliffordAlgebra& alg = *a.algebra_;
  Terms out;
  for (const auto& [s, cs] : a.terms_)
    for (const auto& [t, ct] : b.terms_) {
      const Rational c = cs * ct;
      for (const auto& [m, cm] : alg.multiply(s, t)) add_to(out, m, c * cm);
    }
  return CliffordElement(a.algebra_, std::move(out));
}

bool operator==(const CliffordElement& a, const CliffordElement& b) {
  a.check_ambient(b);
  return a.terms_ == b.terms_;
}

CliffordElement multiply(const CliffordElement& x, const CliffordElement& y) { return x * y; }

CliffordElement main_involution(const CliffordElement& x) {
  Terms out;
  for (const auto& [s, c] : x.terms())
    for (const auto& [m, cm] : x.algebra()->involution(s)) add_to(out, m, c * cm);
  return CliffordElement(x.algebra(), std::move(out));
}

CliffordElement delta(AlgebraPtr algebra) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << algebra->rank()) - 1);
  return CliffordElement::monomial(std::move(algebra), full);
}

CliffordElement spinor_norm(const CliffordElement& g) { return g * main_involution(g); }

Rational trace(const CliffordElement& x) {
  Rational s = 0;
  for (const auto& [m, c] : x.terms()) s += c * x.algebra()->normalized_trace(m);
  return s * Rational(Integer(1) << static_cast<unsigned>(x.algebra()->rank()));
}

namespace {

RatMatrix multiplication_matrix(const CliffordElement& x, bool left) {
  const CliffordAlgebra& alg = *x.algebra();
  if (alg.rank() > kMaxDenseRank) throw Error(ErrorKind::RankTooLarge, "dense Clifford matrices are limited to rank 12");
  const Index dim = static_cast<Index>(alg.dimension());
  RatMatrix M = RatMatrix::Constant(dim, dim, Rational(0));
  for (Index col = 0; col < dim; ++col) {
    const Mask t = static_cast<Mask>(col);
    for (const auto& [s, c] : x.terms())
      for (const auto& [m, cm] : left ? alg.multiply(s, t) : alg.multiply(t, s)) M(static_cast<Index>(m), col) += c * cm;
  }
  return M;
}

}  // namespace

RatMatrix left_multiplication_matrix(const CliffordElement& x) { return multiplication_matrix(x, true); }
RatMatrix right_multiplication_matrix(const CliffordElement& x) { return multiplication_matrix(x, false); }

CliffordElement invert(const CliffordElement& x) {
  const RatMatrix M = left_multiplication_matrix(x);
  RatMatrix e = RatMatrix::Constant(M.rows(), 1, Rational(0));
  e(0, 0) = 1;
  const auto y = solve<Rational>(M, e);
  if (!y) throw Error(ErrorKind::NotInvertible, "element is not a unit");
  Terms t;
  for (Index i = 0; i < y->rows(); ++i) add_to(t, static_cast<Mask>(i), (*y)(i, 0));
  return CliffordElement(x.algebra(), std::move(t));
}

bool is_gspin(const CliffordElement& g) {
  if (g.parity() != Parity::even) throw Error(ErrorKind::InvalidInput, "GSpin membership needs an even element");
  const CliffordElement inv = invert(g);
  for (Index i = 0; i < g.algebra()->rank(); ++i) {
    const CliffordElement c = g * CliffordElement::generator(g.algebra(), i) * inv;
    for (const auto& [m, v] : c.terms())
      if (popcount(m) != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// text format

CliffordElement parse_clifford(AlgebraPtr algebra, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "Clifford element: " + what + " at offset " + std::to_string(pos));
  };

  CliffordElement result(algebra);
  skip();
  if (pos == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sgn = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sgn = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff = 1;
    if (pos < text.size() && text[pos] != 'e') {
      const std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      if (pos == start) fail("expected a coefficient or 'e{'");
      coeff = parse_rational(text.substr(start, pos - start));
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      } else {
        result += CliffordElement::scalar(algebra, sgn * coeff);  // bare rational
        continue;
      }
    }
    if (pos + 1 >= text.size() || text[pos] != 'e' || text[pos + 1] != '{') fail("expected 'e{'");
    pos += 2;
    CliffordElement term = CliffordElement::scalar(algebra, sgn * coeff);
    skip();
    bool need_index = false;
    while (pos < text.size() && text[pos] != '}') {
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) fail("expected an index");
      const long idx = std::stol(std::string(text.substr(start, pos - start)));
      if (idx < 1 || idx > algebra->rank()) fail("index out of range");
      term = term * CliffordElement::generator(algebra, idx - 1);
      skip();
      need_index = false;
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip();
        need_index = true;
      }
    }
    if (need_index || pos == text.size()) fail("unterminated monomial");
    ++pos;
    result += term;
  }
  return result;
}

std::string to_string(const CliffordElement& x) {
  if (x.is_zero()) return "0";
  // by degree, then by index list
  std::vector<std::pair<Mask, Rational>> terms(x.terms().begin(), x.terms().end());
  auto indices = [](Mask m) {
    std::vector<int> v;
    for (; m != 0; m &= m - 1) v.push_back(__builtin_ctz(m) + 1);
    return v;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    if (popcount(a.first) != popcount(b.first)) return popcount(a.first) < popcount(b.first);
    return indices(a.first) < indices(b.first);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    out << to_string(Rational(mp::abs(c))) << "*e{";
    const auto idx = indices(m);
    for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
    out << '}';
  }
  return out.str();
}

}  // namespace k3lat
