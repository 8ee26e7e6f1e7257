#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "k3lat/errors.hpp"
#include "k3lat/gauss.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace k3lat;
using namespace k3lat::testing;

namespace {

using C = std::complex<double>;

// Direct summation over the box [0, c)^n with exact norms.
C direct_gauss(const Lattice& L, long a, long c) {
  const Index n = L.rank();
  std::vector<long> y(static_cast<std::size_t>(n), 0);
  C s = 0;
  while (true) {
    RatVector x(n);
    for (Index i = 0; i < n; ++i) x(i) = y[static_cast<std::size_t>(i)];
    const Rational e = Rational(a) * L.norm(x) / c;
    const Rational r = e - Rational(2 * floor(e / 2));  // in [0, 2)
    const double angle = std::numbers::pi * r.convert_to<double>();
    s += C(std::cos(angle), std::sin(angle));
    std::size_t pos = 0;
    while (pos < y.size() && ++y[pos] >= c) y[pos++] = 0;
    if (pos == y.size()) break;
  }
  return s * std::pow(static_cast<double>(c), -static_cast<double>(n) / 2);
}

Lattice random_even(std::mt19937_64& rng) {
  while (true) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    IntMatrix g = random_symmetric(rng, n, -4, 4, 2);
    for (Index i = 0; i < n; ++i) g(i, i) *= 2;
    const Integer d = determinant(g);
    if (d.is_zero() || mp::abs(d) > 20000) continue;
    return Lattice(g);
  }
}

}  // namespace

TEST_CASE("classical Gauss sums") {
  const Lattice a1 = a1_lattice();
  CHECK(std::abs(gauss_sum(a1, 1, 5).value - C(1, 0)) < 1e-12);
  CHECK(std::abs(gauss_sum(a1, 1, 3).value - C(0, 1)) < 1e-12);
  CHECK(std::abs(gauss_sum(e8_lattice(), 7, 1).value - C(1, 0)) < 1e-12);
  CHECK(std::abs(gauss_sum(hyperbolic_plane(), 3, 1).value - C(1, 0)) < 1e-12);
  CHECK(gauss_sum(a1, 1, 5).normalization == doctest::Approx(1 / std::sqrt(5.0)));
}

TEST_CASE("Gauss sums agree with direct summation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Lattice L = random_even(rng);
    if (L.rank() > 4) continue;
    const long c = 1 + static_cast<long>(rng() % 6);
    const long a = static_cast<long>(rng() % 21) - 10;
    CHECK(std::abs(gauss_sum(L, a, c).value - direct_gauss(L, a, c)) < 1e-9);
  }
}

TEST_CASE("Gauss sum identities") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const Lattice A = random_even(rng), B = random_even(rng);
    if (A.rank() + B.rank() > 6) continue;
    const long c = 1 + static_cast<long>(rng() % 5);
    const long a = static_cast<long>(rng() % 15) - 7;
    const C ga = gauss_sum(A, a, c).value, gb = gauss_sum(B, a, c).value;
    CHECK(std::abs(gauss_sum(direct_sum(A, B), a, c).value - ga * gb) < 1e-9);
    CHECK(std::abs(gauss_sum(A, a + 2 * c, c).value - ga) < 1e-9);
    CHECK(std::abs(gauss_sum(A, -a, c).value - std::conj(ga)) < 1e-9);
    const double mag = std::abs(ga);
    const double lo = std::pow(static_cast<double>(c), -static_cast<double>(A.rank()) / 2);
    const double hi = std::pow(static_cast<double>(c), static_cast<double>(A.rank()) / 2);
    CHECK((mag < 1e-9 || (mag >= lo - 1e-9 && mag <= hi + 1e-9)));
  }
}

TEST_CASE("Gauss sum errors") {
  const Lattice a1 = a1_lattice();
  for (long c : {0L, -3L}) {
    try {
      gauss_sum(a1, 1, c);
      FAIL("expected InvalidModulus");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidModulus);
    }
  }
  try {
    gauss_sum(lattice({{1}}), 1, 3);
    FAIL("expected OddLatticeUnsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddLatticeUnsupported);
  }
  try {
    gauss_sum(e8_lattice(), 1, 10);
    FAIL("expected TooManyTerms");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyTerms);
  }
}

TEST_CASE("Milgram worked values") {
  const MilgramReport a1 = milgram_invariant(a1_lattice());
  CHECK(std::abs(a1.sum - C(1, 1)) < 1e-12);
  CHECK(a1.signature_mod8 == 1);
  CHECK(a1.agrees);
  for (const Lattice& L : {e8_lattice(), hyperbolic_plane(), k3_lattice()}) {
    const MilgramReport r = milgram_invariant(L);
    CHECK(std::abs(r.sum - C(1, 0)) < 1e-12);
    CHECK(r.agrees);
  }
  CHECK(milgram_invariant(k3_lattice()).signature_mod8 == 0);
  CHECK(milgram_invariant(rescale(a1_lattice(), -1)).signature_mod8 == 7);
  CHECK_THROWS_AS(milgram_invariant(lattice({{3}})), Error);
}

TEST_CASE("Milgram fuzz") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const Lattice L = random_even(rng);
    const MilgramReport r = milgram_invariant(L);
    CHECK(std::abs(r.sum - r.predicted) < 1e-9);
    CHECK(r.group_order == mp::abs(L.determinant()));
  }
}
