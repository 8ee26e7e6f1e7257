#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "k3lat/errors.hpp"
#include "k3lat/theta.hpp"
#include "test_support.hpp"

using namespace k3lat;
using namespace k3lat::testing;

namespace {

const Complex I(0, 1);

// Pairs drawn from the box oracle, histogrammed by Gram matrix (r = 2, h = 0).
std::map<std::vector<Rational>, long> box_pair_table(const Lattice& L, const Rational& B) {
  std::vector<RatVector> vs;
  const Index n = L.rank();
  const long R = 4;  // enough for the small lattices used below
  std::vector<long> y(static_cast<std::size_t>(n), -R);
  while (true) {
    RatVector x(n);
    for (Index i = 0; i < n; ++i) x(i) = y[static_cast<std::size_t>(i)];
    if (L.norm(x) <= B) vs.push_back(x);
    std::size_t pos = 0;
    while (pos < y.size() && ++y[pos] > R) y[pos++] = -R;
    if (pos == y.size()) break;
  }
  std::map<std::vector<Rational>, long> out;
  for (const auto& a : vs)
    for (const auto& b : vs)
      if (L.norm(a) + L.norm(b) <= B) ++out[{L.norm(a), L.inner(a, b), L.norm(b)}];
  return out;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(6) == Rational(1, 42));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(7) == 0);
}

TEST_CASE("Eisenstein coefficients") {
  const QExpansion e4 = eisenstein_sigma_coeffs(4, 3);
  CHECK(e4.coefficient(0) == 1);
  CHECK(e4.coefficient(1) == 240);
  CHECK(e4.coefficient(2) == 2160);
  CHECK(e4.coefficient(3) == 6720);
  CHECK(eisenstein_sigma_coeffs(6, 1).coefficient(1) == -504);
  CHECK(eisenstein_sigma_coeffs(12, 1).coefficient(1) == Rational(65520, 691));
  for (int k : {4, 6, 8, 10}) CHECK(eisenstein_sigma_coeffs(k, 5).coefficient(0) == 1);
  for (int k : {2, 3, 5, 0}) {
    try {
      eisenstein_sigma_coeffs(k, 3);
      FAIL("expected UnsupportedWeight");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedWeight);
    }
  }
}

TEST_CASE("theta coefficients") {
  const Lattice a1 = a1_lattice();
  const QExpansion t = theta_coeffs(a1, zero_coset(a1), 8);
  CHECK(t.weight == Rational(1, 2));
  CHECK(t.coeffs == std::map<Rational, Rational>{{0, 1}, {2, 2}, {8, 2}});

  const Lattice e8 = e8_lattice();
  const QExpansion te8 = theta_coeffs(e8, zero_coset(e8), 6);
  CHECK(te8.coefficient(2) == 240);
  CHECK(te8.coefficient(4) == 2160);
  CHECK(te8.coefficient(6) == 6720);
  CHECK(te8.weight == 4);

  CHECK(theta_coeffs(e8, zero_coset(e8), 0).coeffs == std::map<Rational, Rational>{{0, 1}});
  CHECK(theta_coeffs(a1, make_coset(a1, rat_vector({Rational(1, 2)})), 0).coeffs.empty());
  CHECK_THROWS_AS(theta_coeffs(hyperbolic_plane(), zero_coset(hyperbolic_plane()), 4), Error);
}

TEST_CASE("E8 theta equals the weight 4 Eisenstein series") {
  const Lattice e8 = e8_lattice();
  const QExpansion theta = classical_reindex(theta_coeffs(e8, zero_coset(e8), 20));
  const QExpansion eis = eisenstein_sigma_coeffs(4, 10);
  for (int n = 0; n <= 10; ++n) {
    CHECK(theta.coefficient(n) == eis.coefficient(n));
    CHECK(theta.coefficient(n) == (n == 0 ? Integer(1) : 240 * divisor_sigma(3, n)));
  }
  CHECK_THROWS_AS(classical_reindex(theta_coeffs(a1_lattice(), make_coset(a1_lattice(), rat_vector({Rational(1, 2)})), 4)), Error);
}

TEST_CASE("theta coefficients are nonnegative integers") {
  const Lattice L = lattice({{2, 1, 0}, {1, 4, 1}, {0, 1, 6}});
  for (const RatVector& h : discriminant_elements(discriminant_group(L)))
    for (const auto& [t, c] : theta_coeffs(L, make_coset(L, h), 30).coeffs) {
      CHECK(c > 0);
      CHECK(den(c) == 1);
    }
}

TEST_CASE("genus-r tables") {
  const Lattice L = direct_sum(a1_lattice(), a1_lattice());
  const FourierTable t = siegel_theta_table(L, 2, 6);
  CHECK(t.count(to_rational(int_matrix({{2, 0}, {0, 2}}))) == 8);
  CHECK(t.count(to_rational(int_matrix({{0, 0}, {0, 0}}))) == 1);
  CHECK(t.entries.front().rank == 0);
  CHECK(t.entries.front().count == 1);
  for (const auto& e : t.entries) {
    CHECK(e.count == tuple_rep_count(L, GramTarget(e.T), TupleCoset::zero(L, 2)));
    CHECK(e.rank == rank(e.T));
  }

  // r = 1 reproduces theta_coeffs
  const Lattice e8 = e8_lattice();
  const FourierTable one = siegel_theta_table(e8, 1, 6);
  const QExpansion theta = theta_coeffs(e8, zero_coset(e8), 6);
  REQUIRE(one.entries.size() == theta.coeffs.size());
  for (const auto& e : one.entries) CHECK(Rational(e.count) == theta.coefficient(e.T(0, 0)));

  // diag(t, 0): genus-1 count times the single zero vector
  const FourierTable two = siegel_theta_table(e8, 2, 4);
  for (int s : {0, 2, 4}) {
    RatMatrix T = RatMatrix::Constant(2, 2, Rational(0));
    T(0, 0) = s;
    CHECK(Rational(two.count(T)) == theta.coefficient(s));
  }
}

TEST_CASE("genus-2 table matches a box oracle") {
  const Lattice L = lattice({{2, 1, 0}, {1, 2, 1}, {0, 1, 4}});
  const FourierTable t = siegel_theta_table(L, 2, 6);
  const auto oracle = box_pair_table(L, 6);
  REQUIRE(oracle.size() == t.entries.size());
  for (const auto& e : t.entries) CHECK(oracle.at({e.T(0, 0), e.T(0, 1), e.T(1, 1)}) == e.count);
}

TEST_CASE("coset tables") {
  const Lattice a1 = a1_lattice();
  const CosetVector h = make_coset(a1, rat_vector({Rational(1, 2)}));
  const FourierTable t = siegel_theta_table(a1, 1, 4, TupleCoset{{h}});
  const QExpansion theta = theta_coeffs(a1, h, 4);
  REQUIRE(t.entries.size() == theta.coeffs.size());
  for (const auto& e : t.entries) CHECK(Rational(e.count) == theta.coefficient(e.T(0, 0)));
}

TEST_CASE("theta values") {
  const Lattice e8 = e8_lattice();
  const ThetaValue far = theta_value(e8, zero_coset(e8), Complex(0, 1e6), 10);
  CHECK(std::abs(far.value - 1.0) < 1e-10);
  CHECK(far.tail_bound < 1e-10);

  const Complex tau(0.17, 0.8);
  const Complex a = theta_value(e8, zero_coset(e8), tau, 30).value;
  const Complex b = theta_value(e8, zero_coset(e8), tau + 2.0, 30).value;
  CHECK(std::abs(a - b) < 1e-10);

  const ThetaValue at_i = theta_value(e8, zero_coset(e8), I, 40);
  CHECK(std::abs(at_i.value.imag()) < 1e-12);
  CHECK(at_i.value.real() > 0);
  const Complex eis = evaluate(eisenstein_sigma_coeffs(4, 40), I);
  CHECK(std::abs(at_i.value - eis) < 1e-9);

  try {
    theta_value(e8, zero_coset(e8), Complex(1, 0), 4);
    FAIL("expected InvalidTau");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidTau);
  }
}

TEST_CASE("tail bound dominates the omitted terms") {
  const Lattice L = lattice({{2, 1}, {1, 3}});
  const Complex tau(0.1, 0.4);
  const ThetaValue low = theta_value(L, zero_coset(L), tau, 6);
  const ThetaValue high = theta_value(L, zero_coset(L), tau, 80);
  CHECK(std::abs(high.value - low.value) <= low.tail_bound);
}

TEST_CASE("inversion formula") {
  const Lattice e8 = e8_lattice();
  for (const Complex tau : {I, 2.0 * I, Complex(0.3, 0.9)}) {
    const TransformCheck c = theta_transform_check(e8, tau, 40);
    CHECK(c.residual < 1e-8);
    CHECK(c.tail_bound < 1e-8);
  }
  CHECK(theta_transform_check(a1_lattice(), 2.0 * I, 60).residual < 1e-8);
  CHECK(theta_transform_check(lattice({{2, -1}, {-1, 2}}), Complex(0.2, 1.1), 60).residual < 1e-8);

  // B = 0 keeps only the zero vector: 1 versus 2^{-1/2}
  CHECK(theta_transform_check(a1_lattice(), I, 0).residual == doctest::Approx(1 - 1 / std::sqrt(2.0)));
  CHECK(theta_transform_check(e8, I, 0).residual < 1e-15);
}
