#include "k3lat/kuga_satake.hpp"

#include "k3lat/errors.hpp"

#include <random>
#include <vector>

namespace k3lat {

namespace {

constexpr Index kMaxReportRank = 8;

void check_lengths(const Lattice& L, const PeriodPlane& z) {
  if (z.z1.size() != L.rank() || z.z2.size() != L.rank())
    throw Error(ErrorKind::InvalidInput, "plane vectors must have length rank(L)");
}

void check_negative_plane(const Lattice& L, const PeriodPlane& z, bool distinguish_indefinite) {
  check_lengths(L, z);
  const RatMatrix g = plane_gram(L, z);
  const Rational det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (det < 0 && distinguish_indefinite) throw Error(ErrorKind::IndefinitePlane, "plane is indefinite");
  if (det <= 0 || g(0, 0) >= 0) throw Error(ErrorKind::NotNegativePlane, "plane is not negative definite");
}

RatVector column(const IntMatrix& m, Index c) { return to_rational(IntVector(m.col(c))); }

}  // namespace

RatMatrix plane_gram(const Lattice& L, const PeriodPlane& z) {
  check_lengths(L, z);
  RatMatrix g(2, 2);
  g(0, 0) = L.norm(z.z1);
  g(0, 1) = g(1, 0) = L.inner(z.z1, z.z2);
  g(1, 1) = L.norm(z.z2);
  return g;
}

PeriodPlane orthogonalize_plane(const Lattice& L, const PeriodPlane& z) {
  check_negative_plane(L, z, false);
  const RatVector z2 = z.z2 - (L.inner(z.z1, z.z2) / L.norm(z.z1)) * z.z1;
  return {z.z1, z2 * Rational(common_denominator(z2))};
}

JElement j_element(const AlgebraPtr& A, const PeriodPlane& z) {
  const Lattice& L = A->lattice();
  check_negative_plane(L, z, false);
  if (!L.inner(z.z1, z.z2).is_zero()) throw Error(ErrorKind::InvalidInput, "plane basis must be orthogonal");
  return {CliffordElement::vector(A, z.z1) * CliffordElement::vector(A, z.z2), -L.norm(z.z1) * L.norm(z.z2)};
}

CliffordElement polarizer(const AlgebraPtr& A, const Splitting& s) {
  const Lattice& L = A->lattice();
  const Index n = L.rank();
  const IntMatrix& neg = s.negative;
  if (neg.rows() != n || neg.cols() != 2) throw Error(ErrorKind::BadSplitting, "V- needs exactly two lattice vectors");
  const IntMatrix gneg = neg.transpose() * L.gram() * neg;
  const Inertia in = inertia(gneg);
  if (in.negative != 2) throw Error(ErrorKind::BadSplitting, "V- basis is not negative definite");
  if (s.positive.cols() > 0) {
    if (s.positive.rows() != n || s.positive.cols() != n - 2)
      throw Error(ErrorKind::BadSplitting, "V+ needs rank - 2 lattice vectors");
    if (inertia(IntMatrix(s.positive.transpose() * L.gram() * s.positive)).positive != n - 2)
      throw Error(ErrorKind::BadSplitting, "V+ basis is not positive definite");
    const IntMatrix cross = s.positive.transpose() * L.gram() * neg;
    for (Index i = 0; i < cross.rows(); ++i)
      for (Index j = 0; j < cross.cols(); ++j)
        if (!cross(i, j).is_zero()) throw Error(ErrorKind::BadSplitting, "V+ and V- are not orthogonal");
  }
  const CliffordElement a = CliffordElement::vector(A, column(neg, 0)) * CliffordElement::vector(A, column(neg, 1));
  if (!(main_involution(a) == -a)) throw Error(ErrorKind::BadPolarizer, "a^iota != -a; the V- basis must be orthogonal");
  return a;
}

Rational riemann_form(const CliffordElement& a, const CliffordElement& x, const CliffordElement& y) {
  return trace(a * x * main_involution(y));
}

Rational riemann_form(const Lattice& L, const Splitting& s, const CliffordElement& x, const CliffordElement& y) {
  if (x.algebra()->lattice().gram() != L.gram()) throw Error(ErrorKind::AmbientMismatch, "element does not belong to C(L)");
  return riemann_form(polarizer(x.algebra(), s), x, y);
}

CliffordElement rosati(const CliffordElement& a, const CliffordElement& c) {
  return a * main_involution(c) * invert(a);
}

KSReport ks_report(const Lattice& L, const Splitting& s, const PeriodPlane& z) {
  const Signature sig = signature(L);
  if (sig.q != 2) throw Error(ErrorKind::UnsupportedSignature, "Kuga-Satake data needs signature (n, 2)");
  if (L.rank() > kMaxReportRank) throw Error(ErrorKind::RankTooLarge, "Kuga-Satake reports are limited to rank 8");
  check_negative_plane(L, z, true);

  const AlgebraPtr A = clifford_algebra(L);
  KSReport r{orthogonalize_plane(L, z), CliffordElement(A), 0, {}, {}, false, false, false, {}, 0, 0};
  const JElement je = j_element(A, r.plane);
  r.j = je.j;
  r.j_square_scalar = je.c;
  const CliffordElement a = polarizer(A, s);

  const Index dim = static_cast<Index>(A->dimension());
  std::vector<CliffordElement> left, left_j, right;
  for (Index m = 0; m < dim; ++m) {
    const CliffordElement e = CliffordElement::monomial(A, static_cast<Mask>(m));
    left.push_back(a * e);
    left_j.push_back(left.back() * r.j);
    right.push_back(main_involution(e));
  }
  r.riemann_gram = RatMatrix(dim, dim);
  r.hermitian_gram = RatMatrix(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index k = 0; k < dim; ++k) {
      r.riemann_gram(i, k) = trace(left[static_cast<std::size_t>(i)] * right[static_cast<std::size_t>(k)]);
      r.hermitian_gram(i, k) = trace(left_j[static_cast<std::size_t>(i)] * right[static_cast<std::size_t>(k)]);
    }
  r.alternating = r.riemann_gram == RatMatrix(-r.riemann_gram.transpose());
  r.symmetric = r.hermitian_gram == RatMatrix(r.hermitian_gram.transpose());
  r.inertia = inertia(r.hermitian_gram);
  r.definite = r.inertia.positive == dim || r.inertia.negative == dim;
  r.torus_dim = Integer(1) << static_cast<unsigned>(L.rank());
  r.complex_dim = r.torus_dim / 2;
  return r;
}

bool special_endo_test(const Lattice& L, const RatVector& x, const PeriodPlane& z) {
  check_negative_plane(L, z, false);
  if (x.size() != L.rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match rank");
  const AlgebraPtr A = clifford_algebra(L);
  const CliffordElement j = CliffordElement::vector(A, z.z1) * CliffordElement::vector(A, z.z2);
  const CliffordElement v = CliffordElement::vector(A, x);
  return v * j == j * v;
}

std::optional<Lattice> SpecialLattice::lattice() const {
  if (rank() == 0) return std::nullopt;
  return Lattice(gram);
}

SpecialLattice special_endo_lattice(const Lattice& L, const PeriodPlane& z) {
  check_lengths(L, z);
  const RatMatrix G = to_rational(L.gram());
  IntMatrix rows(2, L.rank());
  for (int k = 0; k < 2; ++k) {
    const RatVector g = G * (k == 0 ? z.z1 : z.z2);
    const Integer d = common_denominator(g);
    for (Index i = 0; i < g.size(); ++i) rows(k, i) = num(g(i) * Rational(d));
  }
  SpecialLattice out;
  out.basis = integer_kernel(rows);
  out.gram = out.basis.transpose() * L.gram() * out.basis;
  return out;
}

RatMatrix orthogonal_basis(const Lattice& L) {
  const Index n = L.rank();
  std::vector<RatVector> rest;
  for (Index i = 0; i < n; ++i) {
    RatVector e = RatVector::Constant(n, Rational(0));
    e(i) = 1;
    rest.push_back(e);
  }
  RatMatrix out(n, n);
  for (Index k = 0; k < n; ++k) {
    RatVector v;
    std::size_t pick = rest.size();
    for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
      if (!L.norm(rest[i]).is_zero()) pick = i;
    if (pick < rest.size()) {
      v = rest[pick];
    } else {
      // all remaining vectors are isotropic; some pair is not orthogonal
      for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
          if (!L.inner(rest[i], rest[j]).is_zero()) {
            v = rest[i] + rest[j];
            pick = i;
            break;
          }
      if (pick == rest.size()) throw Error(ErrorKind::DegenerateLattice, "form is degenerate");
    }
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    const Rational q = L.norm(v);
    for (RatVector& r : rest) r -= (L.inner(r, v) / q) * v;
    out.col(k) = v;
  }
  return out;
}

CommutationProfile commutation_profile(const Lattice& L, const RatVector& x, const std::optional<Splitting>& s,
                                       int samples, std::uint64_t seed) {
  if (x.size() != L.rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match rank");
  const AlgebraPtr A = clifford_algebra(L);
  const RatMatrix basis = orthogonal_basis(L);
  CliffordElement omega = CliffordElement::scalar(A, 1);
  for (Index k = 0; k < basis.cols(); ++k) omega = omega * CliffordElement::vector(A, basis.col(k));

  const CliffordElement v = CliffordElement::vector(A, x);
  CommutationProfile p;
  p.delta_commutes = v * omega == omega * v;
  p.parity_rule_ok = L.rank() % 2 == 1 ? p.delta_commutes : v * omega == -(omega * v);

  const CliffordElement a = s ? polarizer(A, *s) : CliffordElement::scalar(A, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-5, 5);
  auto random_element = [&] {
    Terms t;
    for (int i = 0; i < 4; ++i) t[static_cast<Mask>(rng() % A->dimension())] = coef(rng);
    return CliffordElement(A, t);
  };
  p.adjoint_ok = true;
  for (int i = 0; i < samples && p.adjoint_ok; ++i) {
    const CliffordElement y = random_element(), w = random_element();
    p.adjoint_ok = riemann_form(a, y * v, w) == riemann_form(a, y, w * v);
  }
  return p;
}

}  // namespace k3lat
