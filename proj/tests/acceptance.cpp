// Acceptance checks, one PASS/FAIL line per criterion. Exit status 1 if any
// criterion fails.

#include "k3lat/clifford.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/errors.hpp"
#include "k3lat/gauss.hpp"
#include "k3lat/kuga_satake.hpp"
#include "k3lat/theta.hpp"
#include "k3lat/transfer.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace k3lat;
using namespace k3lat::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: none
  std::function<Outcome()> check;
};

std::string str(const Integer& x) { return to_string(x); }

// ---------------------------------------------------------------------------

Outcome k3_invariants() {
  Outcome o;
  const Lattice K = k3_lattice();
  const Signature s = signature(K);
  o.require(s == Signature{3, 19}, "signature is not (3,19)");
  o.require(is_even(K), "K3 lattice is not even");
  o.require(mp::abs(K.determinant()) == 1, "|det| = " + str(K.determinant()));
  const DiscriminantGroup D = discriminant_group(K);
  o.require(D.order == 1 && D.invariant_factors.empty(), "discriminant group is not trivial");
  // the Gram matrix itself: H^3 (+) E8(-1)^2
  o.require(K.rank() == 22, "rank is not 22");
  return o;
}

Outcome siegel_weil_surrogate() {
  Outcome o;
  constexpr int kIndices = 10;
  const auto box = e8_coordinate_model_counts(2 * kIndices);
  const Lattice E8 = e8_lattice();
  const QExpansion theta = classical_reindex(theta_coeffs(E8, zero_coset(E8), 2 * kIndices));
  const QExpansion eis = eisenstein_sigma_coeffs(4, kIndices);
  o.require(theta.coefficient(0) == 1, "constant term is not 1");
  for (long n = 1; n <= kIndices; ++n) {
    const Integer expected = 240 * divisor_sigma(3, n);
    const Rational got = theta.coefficient(n);
    o.require(Rational(box[static_cast<std::size_t>(2 * n)]) == Rational(expected),
              "box oracle disagrees with 240 sigma_3 at n = " + std::to_string(n));
    o.require(got == Rational(expected),
              "theta coefficient " + to_string(got) + " != " + str(expected) + " at n = " + std::to_string(n));
    o.require(eis.coefficient(n) == got, "Eisenstein coefficient differs at n = " + std::to_string(n));
  }
  return o;
}

Outcome milgram_fuzz() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> diag(-3, 3), off(-2, 2);
  int tested = 0;
  while (tested < 25) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    IntMatrix g(n, n);
    for (Index i = 0; i < n; ++i) {
      long d = 0;
      while (d == 0) d = diag(rng);
      g(i, i) = 2 * d;
      for (Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    const Integer det = determinant(g);
    if (det == 0 || mp::abs(det) > 4000) continue;
    const Lattice L(g);
    const MilgramReport r = milgram_invariant(L);

    // prediction from floating-point eigenvalues, independent of the library
    Eigen::MatrixXd gd(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) gd(i, j) = g(i, j).convert_to<double>();
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gd).eigenvalues();
    int sig = 0;
    for (Index i = 0; i < n; ++i) sig += ev(i) > 0 ? 1 : -1;
    const double angle = 2 * std::numbers::pi * sig / 8.0;
    const std::complex<double> predicted =
        std::sqrt(mp::abs(det).convert_to<double>()) * std::complex<double>(std::cos(angle), std::sin(angle));
    const double err = std::abs(r.sum - predicted);
    std::ostringstream msg;
    msg << "lattice #" << tested << " (rank " << n << ", det " << det << "): |sum - prediction| = " << err;
    o.require(err < 1e-9, msg.str());
    ++tested;
  }
  o.detail = o.ok ? std::to_string(tested) + " lattices" : o.detail;
  return o;
}

Outcome enumeration_oracle() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> diag(1, 6), off(-3, 3);
  constexpr long kBound = 50;
  int tested = 0;
  while (tested < 50) {
    const Index n = 1 + static_cast<Index>(tested % 4);
    IntMatrix g(n, n);
    for (Index i = 0; i < n; ++i) {
      g(i, i) = diag(rng);
      for (Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    if (determinant(g) == 0) continue;
    const Lattice L(g);
    if (!is_positive_definite(L) || eigenvalue_lower_bound(g) < Rational(1, 4)) continue;
    const auto box = box_norm_histogram(L, RatVector::Constant(n, Rational(0)), kBound);
    const auto fp = norm_counts(L, zero_coset(L), kBound);
    for (long t = 0; t <= kBound; ++t) {
      const auto b = box.find(Rational(t));
      const auto f = fp.find(Rational(t));
      const Integer nb = b == box.end() ? Integer(0) : Integer(b->second);
      const Integer nf = f == fp.end() ? Integer(0) : f->second;
      o.require(nb == nf, "lattice #" + std::to_string(tested) + ", t = " + std::to_string(t) + ": Fincke-Pohst " +
                              str(nf) + " vs box " + str(nb));
    }
    o.require(fp.size() <= box.size(), "Fincke-Pohst reports a norm the box never saw");
    ++tested;
  }
  o.detail = o.ok ? "50 lattices, t <= 50" : o.detail;
  return o;
}

IntMatrix random_unimodular(std::mt19937_64& rng, Index r) {
  while (true) {
    IntMatrix u = IntMatrix::Identity(r, r);
    for (int step = 0; step < 4; ++step) {
      const Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(r));
      const Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(r));
      if (i == j) {
        u.row(i) *= Integer(-1);
        continue;
      }
      u.row(i) += Integer(static_cast<long>(rng() % 5) - 2) * u.row(j);
    }
    if (u.cwiseAbs().maxCoeff() <= 2 && mp::abs(determinant(u)) == 1) return u;
  }
}

Outcome tuple_covariance() {
  Outcome o;
  const Lattice a1a1 = diagonal_lattice({2, 2});
  const Integer worked = tuple_rep_count(a1a1, GramTarget::from_int(int_matrix({{2, 0}, {0, 2}})), TupleCoset::zero(a1a1, 2));
  o.require(worked == 8, "tuple_rep_count(A1+A1, diag(2,2)) = " + str(worked));

  const Lattice E8 = e8_lattice();
  const IntMatrix T = int_matrix({{2, 1}, {1, 2}});
  const Integer base = tuple_rep_count(E8, GramTarget::from_int(T), TupleCoset::zero(E8, 2));
  o.require(base == 13440, "E8 count for [[2,1],[1,2]] is " + str(base));
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 25; ++rep) {
    const IntMatrix U = random_unimodular(rng, 2);
    const IntMatrix T2 = U.transpose() * T * U;
    const Integer c = tuple_rep_count(E8, GramTarget::from_int(T2), TupleCoset::zero(E8, 2));
    o.require(c == base, "count changed under U^T T U: " + str(c) + " != " + str(base));
  }
  // worked value is covariant too
  for (int rep = 0; rep < 25; ++rep) {
    const IntMatrix U = random_unimodular(rng, 2);
    const IntMatrix T2 = U.transpose() * int_matrix({{2, 0}, {0, 2}}) * U;
    o.require(tuple_rep_count(a1a1, GramTarget::from_int(T2), TupleCoset::zero(a1a1, 2)) == 8,
              "A1+A1 count changed under a unimodular change");
  }
  return o;
}

CliffordElement random_element(std::mt19937_64& rng, const AlgebraPtr& A, int terms, long range,
                               int parity = -1) {
  std::uniform_int_distribution<long> coef(-range, range);
  const int available = static_cast<int>(parity >= 0 ? A->dimension() / 2 : A->dimension());
  terms = std::min(terms, available);
  Terms t;
  while (static_cast<int>(t.size()) < terms) {
    const Mask m = static_cast<Mask>(rng() % A->dimension());
    if (parity >= 0 && popcount(m) % 2 != parity) continue;
    t[m] = coef(rng);
  }
  return CliffordElement(A, t);
}

bool integral(const CliffordElement& x) {
  for (const auto& [m, c] : x.terms())
    if (den(c) != 1) return false;
  return true;
}

Outcome clifford_suite() {
  Outcome o;
  const std::vector<Lattice> lattices = {
      lattice({{2, 1}, {1, 2}}),
      lattice({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}),
      lattice({{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}),
      lattice({{1, 1, 0, 0, 0}, {1, -3, 1, 0, 0}, {0, 1, 2, 0, 1}, {0, 0, 0, 4, 0}, {0, 0, 1, 0, -1}}),
  };
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> vc(-4, 4);
  for (std::size_t li = 0; li < lattices.size(); ++li) {
    const Lattice& L = lattices[li];
    const AlgebraPtr A = clifford_algebra(L);
    const std::string tag = "lattice #" + std::to_string(li) + ": ";
    const bool even = is_even(L);
    for (int rep = 0; rep < 100; ++rep) {
      const CliffordElement x = random_element(rng, A, 4, 5), y = random_element(rng, A, 4, 5),
                            z = random_element(rng, A, 4, 5);
      o.require((x * y) * z == x * (y * z), tag + "associativity fails");
      o.require(main_involution(x * y) == main_involution(y) * main_involution(x), tag + "iota is not an anti-automorphism");
      o.require(main_involution(main_involution(x)) == x, tag + "iota is not an involution");
      if (even) o.require(integral(x * y), tag + "product of integral elements is not integral");

      const int px = static_cast<int>(rng() % 2), py = static_cast<int>(rng() % 2);
      const CliffordElement hx = random_element(rng, A, 3, 4, px), hy = random_element(rng, A, 3, 4, py);
      const Parity want = (px + py) % 2 == 0 ? Parity::even : Parity::odd;
      const CliffordElement p = hx * hy;
      o.require(p.is_zero() || p.parity() == want, tag + "grading is not respected");

      RatVector v(L.rank());
      for (Index i = 0; i < v.size(); ++i) v(i) = vc(rng);
      const CliffordElement cv = CliffordElement::vector(A, v);
      o.require(cv * cv == CliffordElement::scalar(A, L.norm(v)), tag + "v^2 != (v, v)");
      o.require(main_involution(cv) == cv, tag + "iota moves a vector");
    }
  }
  return o;
}

struct KSCase {
  std::string name;
  Lattice L;
  Splitting split;
};

IntMatrix columns(Index n, std::initializer_list<Index> idx) {
  IntMatrix m = IntMatrix::Zero(n, static_cast<Index>(idx.size()));
  Index c = 0;
  for (Index i : idx) m(i, c++) = 1;
  return m;
}

Outcome kuga_satake_certification() {
  Outcome o;
  const std::vector<KSCase> cases = {
      {"(1,2)", diagonal_lattice({2, -2, -2}), {columns(3, {0}), columns(3, {1, 2})}},
      {"(2,2)", lattice({{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, -4}}), {columns(4, {0, 1}), columns(4, {2, 3})}},
      {"(3,2)", lattice({{2, 1, 0, 1, 0}, {1, 2, 0, 0, 0}, {0, 0, 2, 0, 1}, {1, 0, 0, -2, 0}, {0, 0, 1, 0, -2}}),
       {IntMatrix(5, 0), columns(5, {3, 4})}},
  };
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> u(-3, 3);
  auto random_vector = [&](Index n) {
    RatVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = u(rng);
    return v;
  };
  auto random_plane = [&](const Lattice& L) {
    while (true) {
      PeriodPlane z{random_vector(L.rank()), random_vector(L.rank())};
      const RatMatrix g = plane_gram(L, z);
      if (g(0, 0) < 0 && g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1) > 0) return z;
    }
  };

  int pairs = 0;
  for (const KSCase& c : cases) {
    const Signature s = signature(c.L);
    o.require(s.q == 2 && s.p == static_cast<int>(c.L.rank()) - 2, c.name + ": wrong test signature");
    const AlgebraPtr A = clifford_algebra(c.L);
    for (int rep = 0; rep < 3; ++rep) {
      const PeriodPlane z = random_plane(c.L);
      const KSReport r = ks_report(c.L, c.split, z);
      const Rational c_expected = -c.L.norm(r.plane.z1) * c.L.norm(r.plane.z2);
      o.require(c.L.inner(r.plane.z1, r.plane.z2) == 0, c.name + ": plane basis not orthogonal");
      o.require(r.j * r.j == CliffordElement::scalar(A, c_expected), c.name + ": j^2 != -(z1,z1)(z2,z2)");
      o.require(r.j_square_scalar == c_expected, c.name + ": reported j^2 scalar is wrong");

      const Index dim = r.riemann_gram.rows();
      bool alternating = true, integral = true, symmetric = true;
      for (Index i = 0; i < dim; ++i)
        for (Index k = 0; k < dim; ++k) {
          alternating = alternating && r.riemann_gram(i, k) == -r.riemann_gram(k, i);
          integral = integral && den(r.riemann_gram(i, k)) == 1;
          symmetric = symmetric && r.hermitian_gram(i, k) == r.hermitian_gram(k, i);
        }
      o.require(alternating && r.alternating, c.name + ": <,>_a is not alternating");
      o.require(integral, c.name + ": <,>_a is not Z-valued on C(L)");
      o.require(symmetric && r.symmetric, c.name + ": <. j, .>_a is not symmetric");
      const Inertia in = inertia(r.hermitian_gram);
      const int full = 1 << c.L.rank();
      o.require(in.zero == 0 && (in.positive == full || in.negative == full),
                c.name + ": <. j, .>_a inertia is (" + std::to_string(in.positive) + "," + std::to_string(in.negative) +
                    "," + std::to_string(in.zero) + ")");

      const SpecialLattice S = special_endo_lattice(c.L, z);
      o.require(S.gram == IntMatrix(S.basis.transpose() * c.L.gram() * S.basis),
                c.name + ": special lattice Gram is not the restriction of L");
      for (Index k = 0; k < S.rank(); ++k) {
        const RatVector b = to_rational(IntVector(S.basis.col(k)));
        o.require(c.L.inner(b, z.z1) == 0 && c.L.inner(b, z.z2) == 0, c.name + ": special basis vector not in z^perp");
      }
    }
    // (x, z) pairs: half drawn from z^perp when it is nonzero
    for (int rep = 0; rep < 70 && pairs < 210; ++rep, ++pairs) {
      const PeriodPlane z = random_plane(c.L);
      RatVector x = random_vector(c.L.rank());
      if (rep % 2 == 0) {
        const SpecialLattice S = special_endo_lattice(c.L, z);
        if (S.rank() > 0) {
          x = RatVector::Constant(c.L.rank(), Rational(0));
          for (Index k = 0; k < S.rank(); ++k) x += Rational(u(rng)) * to_rational(IntVector(S.basis.col(k)));
        }
      }
      const bool orthogonal = c.L.inner(x, z.z1) == 0 && c.L.inner(x, z.z2) == 0;
      o.require(special_endo_test(c.L, x, z) == orthogonal, c.name + ": special_endo_test disagrees with orthogonality");
    }
  }
  o.require(pairs >= 200, "fewer than 200 (x, z) pairs");
  if (o.ok) o.detail = std::to_string(pairs) + " (x, z) pairs";
  return o;
}

Outcome transfer_suite() {
  Outcome o;
  const FieldPtr F = make_field({Integer(-2), Integer(0), Integer(1)});
  const FieldElement s(F, (RatVector(2) << Rational(0), Rational(1)).finished());
  FieldMatrix g(2, 2);
  g << s, FieldElement(0), FieldElement(0), s;
  const NumberFieldLattice M = make_nf_lattice(F, g);
  o.require(signature(trace_lattice(M)) == Signature{2, 2}, "<sqrt2, sqrt2> does not give signature (2,2)");
  o.require(ks_admissible(M), "<sqrt2, sqrt2> is not admissible");

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> u(-7, 7);
  const std::vector<std::vector<Integer>> fields = {{-2, 0, 1}, {-3, 0, 1}, {-1, -1, 1}, {1, -3, 0, 1}, {-1, -2, 1, 1}};
  int tested = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const FieldPtr K = make_field(fields[static_cast<std::size_t>(rep) % fields.size()]);
    const Index r = 1 + static_cast<Index>(rng() % 3);
    FieldMatrix d(r, r);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j) {
        if (i != j) {
          d(i, j) = FieldElement(0);
          continue;
        }
        RatVector c(K->degree());
        do
          for (Index t = 0; t < c.size(); ++t) c(t) = u(rng);
        while (c.isZero());
        d(i, i) = FieldElement(K, c);
      }
    const NumberFieldLattice N = make_nf_lattice(K, d);
    Signature sum;
    for (const Signature& p : signature_profile(N)) {
      sum.p += p.p;
      sum.q += p.q;
    }
    o.require(signature(trace_lattice(N)) == sum, "signature additivity fails for random diagonal M #" + std::to_string(rep));
    ++tested;
  }
  if (o.ok) o.detail = std::to_string(tested) + " random diagonal M";
  return o;
}

Outcome table_byte_match() {
  Outcome o;
  const std::string path = std::string(K3LAT_SOURCE_DIR) + "/data/feasibility_table.csv";
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    o.require(false, "cannot read " + path);
    return o;
  }
  const std::string expected{std::istreambuf_iterator<char>(in), {}};
  const std::string got = feasibility_csv(feasibility_table());
  if (got == expected) return o;
  auto lines = [](const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
  };
  const auto want = lines(expected), have = lines(got);
  std::string diff;
  for (std::size_t i = 0; i < std::max(want.size(), have.size()); ++i) {
    const std::string w = i < want.size() ? want[i] : "", h = i < have.size() ? have[i] : "";
    if (w != h) diff += (diff.empty() ? "" : "; ") + std::string("table has '") + w + "', computed '" + h + "'";
  }
  o.require(false, diff.empty() ? "byte mismatch" : diff);
  return o;
}

Outcome modularity_witness() {
  Outcome o;
  const Lattice E8 = e8_lattice();
  std::ostringstream report;
  report << std::scientific << std::setprecision(1);
  for (const Complex tau : {Complex(0, 1), Complex(1, 1), Complex(0, 2), Complex(0.3, 0.9)}) {
    const TransformCheck c = theta_transform_check(E8, tau, 40);
    std::ostringstream msg;
    msg << "E8 at tau = " << tau << ": residual " << c.residual;
    o.require(c.residual < 1e-8, msg.str());
    report << c.residual << " ";
  }
  const Lattice A1 = a1_lattice();
  const TransformCheck c = theta_transform_check(A1, Complex(0, 2), 60);
  std::ostringstream msg;
  msg << "A1 at tau = 2i: residual " << c.residual;
  o.require(c.residual < 1e-8, msg.str());
  report << c.residual;
  if (o.ok) o.detail = "max residuals " + report.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "K3 lattice invariants", 1, k3_invariants},
      {2, "E8 theta = 240 sigma_3 Eisenstein coefficients", 30, siegel_weil_surrogate},
      {3, "Milgram fuzz suite", 60, milgram_fuzz},
      {4, "Fincke-Pohst vs box enumeration", 120, enumeration_oracle},
      {5, "tuple_rep_count GL_2(Z) covariance", 0, tuple_covariance},
      {6, "Clifford algebra property suite", 30, clifford_suite},
      {7, "Kuga-Satake certification", 120, kuga_satake_certification},
      {8, "trace-form transfer suite", 60, transfer_suite},
      {9, "feasibility table byte-match", 0, table_byte_match},
      {10, "theta inversion residuals", 0, modularity_witness},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "time limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s exceeded";
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << std::setw(2) << c.id << "  " << c.title << "  [" << std::fixed
              << std::setprecision(2) << secs << " s]";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
