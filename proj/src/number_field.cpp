#include "k3lat/number_field.hpp"

#include "k3lat/errors.hpp"
#include "k3lat/linalg.hpp"

#include <algorithm>

namespace k3lat {

// ---------------------------------------------------------------------------
// polynomials over Q

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int sign_changes(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const Poly& p : seq) {
    const int s = evaluate(p, x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Interval Horner evaluation of p over [lo, hi].
std::pair<Rational, Rational> interval_eval(const Poly& p, const Rational& lo, const Rational& hi) {
  Rational a = 0, b = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const Rational c[4] = {a * lo, a * hi, b * lo, b * hi};
    a = *std::min_element(c, c + 4) + *it;
    b = *std::max_element(c, c + 4) + *it;
  }
  return {a, b};
}

Poly to_poly(const RatVector& v) {
  Poly p(v.data(), v.data() + v.size());
  trim(p);
  return p;
}

}  // namespace

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Rational evaluate(const Poly& p, const Rational& x) {
  Rational y = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) y = y * x + *it;
  return y;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly poly_rem(const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
  Poly r = a;
  trim(r);
  while (r.size() >= b.size()) {
    const Rational f = r.back() / b.back();
    const std::size_t shift = r.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (Rational& c : a) c /= lead;
  }
  return a;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{p, derivative(p)};
  trim(seq[0]);
  while (!seq.back().empty()) {
    Poly r = poly_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (Rational& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  if (seq.back().empty()) seq.pop_back();
  return seq;
}

int count_roots(const std::vector<Poly>& sturm, const Rational& a, const Rational& b) {
  return sign_changes(sturm, a) - sign_changes(sturm, b);
}

// ---------------------------------------------------------------------------
// fields

TotallyRealField::TotallyRealField(std::vector<Integer> poly, RatMatrix basis) : poly_(std::move(poly)) {
  if (poly_.size() < 2) throw Error(ErrorKind::InvalidInput, "defining polynomial must have degree >= 1");
  if (poly_.back() != 1) throw Error(ErrorKind::InvalidInput, "defining polynomial must be monic");
  d_ = static_cast<int>(poly_.size()) - 1;
  for (const Integer& c : poly_) p_.push_back(Rational(c));

  if (k3lat::degree(poly_gcd(p_, derivative(p_))) > 0) throw Error(ErrorKind::InvalidInput, "defining polynomial is not squarefree");
  sturm_ = sturm_sequence(p_);
  Integer bound = 1;
  for (const Integer& c : poly_) bound = std::max(bound, Integer(mp::abs(c)));
  const Rational M = Rational(bound + 1);
  if (count_roots(sturm_, -M, M) != d_) throw Error(ErrorKind::InvalidInput, "defining polynomial is not totally real");

  // isolate by bisection; left halves first keeps the roots ascending
  auto isolate = [&](auto&& self, const Rational& lo, const Rational& hi, int count) -> void {
    if (count == 0) return;
    if (count == 1) {
      roots_.push_back({lo, hi});
      return;
    }
    const Rational mid = (lo + hi) / 2;
    self(self, lo, mid, count_roots(sturm_, lo, mid));
    self(self, mid, hi, count_roots(sturm_, mid, hi));
  };
  isolate(isolate, -M, M, d_);
  refined_ = roots_;

  // tr(x^k) by Newton's identities
  power_sums_.assign(static_cast<std::size_t>(d_), Rational(0));
  power_sums_[0] = d_;
  for (int k = 1; k < d_; ++k) {
    Rational s = Rational(k) * p_[static_cast<std::size_t>(d_ - k)];
    for (int i = 1; i < k; ++i) s += p_[static_cast<std::size_t>(d_ - i)] * power_sums_[static_cast<std::size_t>(k - i)];
    power_sums_[static_cast<std::size_t>(k)] = -s;
  }

  if (basis.size() == 0) {
    basis_ = RatMatrix::Identity(d_, d_);
    to_integral_ = basis_;
  } else {
    if (basis.rows() != d_ || basis.cols() != d_) throw Error(ErrorKind::InvalidInput, "integral basis must be d x d");
    basis_ = std::move(basis);
    const auto inv = inverse<Rational>(basis_.transpose());
    if (!inv) throw Error(ErrorKind::InvalidInput, "integral basis is linearly dependent");
    to_integral_ = *inv;
    RatVector one = RatVector::Constant(d_, Rational(0));
    one(0) = 1;
    if (!is_integral(one)) throw Error(ErrorKind::InvalidInput, "integral basis does not contain 1");
    for (int k = 0; k < d_; ++k)
      for (int l = k; l < d_; ++l)
        if (!is_integral(multiply(basis_.row(k).transpose(), basis_.row(l).transpose())))
          throw Error(ErrorKind::InvalidInput, "integral basis is not closed under multiplication");
  }
}

RatVector TotallyRealField::multiply(const RatVector& a, const RatVector& b) const {
  std::vector<Rational> prod(static_cast<std::size_t>(2 * d_ - 1), Rational(0));
  for (int i = 0; i < d_; ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < d_; ++j) prod[static_cast<std::size_t>(i + j)] += a(i) * b(j);
  }
  // x^k = -sum_{i<d} c_i x^{k-d+i} for k >= d
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    const Rational c = prod[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    for (int i = 0; i < d_; ++i) prod[static_cast<std::size_t>(k - d_ + i)] -= c * p_[static_cast<std::size_t>(i)];
  }
  RatVector out(d_);
  for (int i = 0; i < d_; ++i) out(i) = prod[static_cast<std::size_t>(i)];
  return out;
}

RatMatrix TotallyRealField::multiplication_matrix(const RatVector& a) const {
  RatMatrix m(d_, d_);
  for (int j = 0; j < d_; ++j) {
    RatVector e = RatVector::Constant(d_, Rational(0));
    e(j) = 1;
    m.col(j) = multiply(a, e);
  }
  return m;
}

Rational TotallyRealField::trace(const RatVector& a) const {
  Rational s = 0;
  for (int i = 0; i < d_; ++i) s += a(i) * power_sums_[static_cast<std::size_t>(i)];
  return s;
}

RootInterval TotallyRealField::refined(int k, int bits) const {
  RootInterval iv;
  {
    std::lock_guard lock(mutex_);
    iv = refined_[static_cast<std::size_t>(k)];
  }
  const Rational width = Rational(1) / Rational(Integer(1) << static_cast<unsigned>(bits));
  while (iv.lo != iv.hi && iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    if (evaluate(p_, mid).is_zero() && count_roots(sturm_, iv.lo, mid) == 1) {
      iv = {mid, mid};
    } else if (count_roots(sturm_, iv.lo, mid) == 1) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
  std::lock_guard lock(mutex_);
  RootInterval& cached = refined_[static_cast<std::size_t>(k)];
  if (iv.hi - iv.lo < cached.hi - cached.lo) cached = iv;
  return iv;
}

int TotallyRealField::sign(const RatVector& a, int k) const {
  if (k < 0 || k >= d_) throw Error(ErrorKind::InvalidInput, "embedding index out of range");
  const Poly p = to_poly(a);
  if (p.empty()) return 0;
  if (p.size() == 1) return p[0].sign();
  for (int bits = 8; bits <= 4096; bits *= 2) {
    const RootInterval iv = refined(k, bits);
    if (iv.lo == iv.hi) return evaluate(p, iv.lo).sign();
    const auto [lo, hi] = interval_eval(p, iv.lo, iv.hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw Error(ErrorKind::PrecisionExhausted, "could not separate an embedding value from zero");
}

double TotallyRealField::approximate(const RatVector& a, int k) const {
  const RootInterval iv = refined(k, 60);
  return evaluate(to_poly(a), (iv.lo + iv.hi) / 2).convert_to<double>();
}

RatVector TotallyRealField::from_integral(const RatVector& c) const {
  if (c.size() != d_) throw Error(ErrorKind::InvalidInput, "coordinate vector length differs from the degree");
  return basis_.transpose() * c;
}

RatVector TotallyRealField::to_integral(const RatVector& a) const {
  if (a.size() != d_) throw Error(ErrorKind::InvalidInput, "coordinate vector length differs from the degree");
  return to_integral_ * a;
}

bool TotallyRealField::is_integral(const RatVector& a) const {
  const RatVector c = to_integral(a);
  for (Index i = 0; i < c.size(); ++i)
    if (den(c(i)) != 1) return false;
  return true;
}

FieldPtr make_field(std::vector<Integer> poly, RatMatrix basis) {
  return std::make_shared<const TotallyRealField>(std::move(poly), std::move(basis));
}

// ---------------------------------------------------------------------------
// elements

FieldElement::FieldElement(const Rational& c) : c_(1) { c_(0) = c; }

FieldElement::FieldElement(FieldPtr field, RatVector coords) : field_(std::move(field)), c_(std::move(coords)) {
  if (!field_) {
    if (c_.size() != 1) throw Error(ErrorKind::InvalidInput, "constant needs exactly one coordinate");
  } else if (c_.size() != field_->degree()) {
    throw Error(ErrorKind::InvalidInput, "coordinate vector length differs from the degree");
  }
}

FieldElement FieldElement::from_integral(const FieldPtr& field, const RatVector& c) {
  return FieldElement(field, field->from_integral(c));
}

RatVector FieldElement::coordinates(int d) const {
  if (field_) return c_;
  RatVector v = RatVector::Constant(std::max(d, 1), Rational(0));
  v(0) = c_(0);
  return v;
}

bool FieldElement::is_zero() const {
  for (Index i = 0; i < c_.size(); ++i)
    if (!c_(i).is_zero()) return false;
  return true;
}

bool FieldElement::is_integral() const {
  if (!field_) return den(c_(0)) == 1;
  return field_->is_integral(c_);
}

void FieldElement::adopt(const FieldElement& o) {
  if (!o.field_) return;
  if (!field_) {
    c_ = coordinates(o.field_->degree());
    field_ = o.field_;
  } else if (field_ != o.field_ && field_->polynomial() != o.field_->polynomial()) {
    throw Error(ErrorKind::InvalidInput, "elements of different fields");
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  adopt(o);
  c_ += o.coordinates(static_cast<int>(c_.size()));
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  adopt(o);
  c_ -= o.coordinates(static_cast<int>(c_.size()));
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  adopt(o);
  if (!field_) {
    c_(0) *= o.c_(0);
  } else if (!o.field_) {
    c_ *= o.c_(0);
  } else {
    c_ = field_->multiply(c_, o.c_);
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero in a number field");
  adopt(o);
  if (!o.field_) {
    c_ /= o.c_(0);
    return *this;
  }
  RatVector one = RatVector::Constant(field_->degree(), Rational(0));
  one(0) = 1;
  const auto inv = solve<Rational>(field_->multiplication_matrix(o.c_), RatMatrix(one));
  if (!inv) throw Error(ErrorKind::InvalidInput, "zero divisor: the defining polynomial is reducible");
  c_ = field_->multiply(c_, RatVector(inv->col(0)));
  return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  const int d = a.field_ ? a.field_->degree() : b.field_ ? b.field_->degree() : 1;
  return a.coordinates(d) == b.coordinates(d);
}

Rational FieldElement::trace() const {
  if (!field_) throw Error(ErrorKind::InvalidInput, "trace of a constant needs a field");
  return field_->trace(c_);
}

int FieldElement::sign(int k) const {
  if (!field_) return c_(0).sign();
  return field_->sign(c_, k);
}

}  // namespace k3lat
