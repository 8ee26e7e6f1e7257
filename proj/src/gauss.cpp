#include "k3lat/gauss.hpp"

#include "k3lat/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace k3lat {

namespace {

constexpr double kMaxTerms = 1e7;

// sum_e hist[e] e^{pi i e / c} over exponents e in [0, 2c)
std::complex<double> exponential_sum(const std::vector<std::uint64_t>& hist, std::int64_t c) {
  std::complex<double> s = 0;
  for (std::size_t e = 0; e < hist.size(); ++e) {
    if (hist[e] == 0) continue;
    const double angle = std::numbers::pi * static_cast<double>(e) / static_cast<double>(c);
    s += static_cast<double>(hist[e]) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return s;
}

}  // namespace

GaussSumValue gauss_sum(const Lattice& L, const Integer& a, const Integer& c) {
  if (c <= 0) throw Error(ErrorKind::InvalidModulus, "modulus must be positive");
  if (!is_even(L)) throw Error(ErrorKind::OddLatticeUnsupported, "Gauss sums need an even lattice");
  const Index n = L.rank();
  if (std::pow(c.convert_to<double>(), static_cast<double>(n)) > kMaxTerms)
    throw Error(ErrorKind::TooManyTerms, "c^rank exceeds 10^7 terms");

  const std::int64_t cc = c.convert_to<std::int64_t>();
  const std::int64_t m = 2 * cc;
  auto mod = [m](const Integer& x) {
    Integer r = x % m;
    if (r < 0) r += m;
    return r.convert_to<std::int64_t>();
  };
  const std::int64_t am = mod(a);
  std::vector<std::int64_t> g(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g[static_cast<std::size_t>(i * n + j)] = mod(L.gram()(i, j));

  // Q(x) = sum_i x_i (G_ii x_i + 2 sum_{j<i} G_ij x_j), all mod 2c
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(m), 0);
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, Index i, std::int64_t q) -> void {
    if (i == n) {
      ++hist[static_cast<std::size_t>((am * q) % m)];
      return;
    }
    std::int64_t cross = 0;
    for (Index j = 0; j < i; ++j) cross = (cross + g[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)]) % m;
    const std::int64_t gii = g[static_cast<std::size_t>(i * n + i)];
    for (std::int64_t v = 0; v < cc; ++v) {
      x[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, (q + v * ((gii * v + 2 * cross) % m)) % m);
    }
  };
  rec(rec, 0, 0);

  GaussSumValue out;
  out.a = a;
  out.c = c;
  out.rank = n;
  out.normalization = std::pow(static_cast<double>(cc), -static_cast<double>(n) / 2);
  out.value = out.normalization * exponential_sum(hist, cc);
  return out;
}

MilgramReport milgram_invariant(const Lattice& L) {
  if (!is_even(L)) throw Error(ErrorKind::OddLatticeUnsupported, "Milgram's formula needs an even lattice");
  const DiscriminantGroup D = discriminant_group(L);
  if (D.order.convert_to<double>() > kMaxTerms) throw Error(ErrorKind::TooManyTerms, "discriminant group exceeds 10^7 elements");

  // (h, h) mod 2 has denominator dividing the exponent of the group
  const Integer e = D.invariant_factors.empty() ? Integer(1) : D.invariant_factors.back();
  const std::int64_t ee = e.convert_to<std::int64_t>();
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(2 * ee), 0);
  for (const RatVector& h : discriminant_elements(D)) {
    const Rational q = coset_norm(L, make_coset(L, h)) * Rational(e);
    if (den(q) != 1) throw Error(ErrorKind::InvalidInput, "unexpected denominator in discriminant norm");
    ++hist[num(q).convert_to<std::size_t>()];
  }

  const Signature s = signature(L);
  MilgramReport out;
  out.group_order = D.order;
  out.sum = exponential_sum(hist, ee);
  out.signature_mod8 = (((s.p - s.q) % 8) + 8) % 8;
  const double angle = 2 * std::numbers::pi * out.signature_mod8 / 8.0;
  out.predicted = std::sqrt(D.order.convert_to<double>()) * std::complex<double>(std::cos(angle), std::sin(angle));
  out.agrees = std::abs(out.sum - out.predicted) < 1e-9;
  return out;
}

}  // namespace k3lat
