#pragma once

// Kuga-Satake data for a lattice of signature (n, 2): complex structures
// j_z = z1 z2 from negative planes, the alternating form tr(a x y^iota), and
// special endomorphisms given by right multiplication with lattice vectors.
//
// Plane bases are kept rational and orthogonal rather than orthonormal, so
// j^2 = c with c = -(z1, z1)(z2, z2) < 0 instead of -1.

#include "k3lat/clifford.hpp"

#include <cstdint>
#include <optional>

namespace k3lat {

struct PeriodPlane {
  RatVector z1, z2;
};

/// 2 x 2 Gram matrix of (z1, z2).
RatMatrix plane_gram(const Lattice& L, const PeriodPlane& z);

/// Gram-Schmidt step on z2, then z2 is multiplied by the lcm of its
/// denominators. Throws NotNegativePlane.
PeriodPlane orthogonalize_plane(const Lattice& L, const PeriodPlane& z);

struct JElement {
  CliffordElement j;
  Rational c;  // j^2 = c
};

/// j = z1 z2 for an orthogonal negative plane basis. Throws NotNegativePlane,
/// InvalidInput when (z1, z2) != 0.
JElement j_element(const AlgebraPtr& A, const PeriodPlane& z);

/// Rational splitting V = V+ (+) V-; columns are lattice vectors. Only the two
/// columns of `negative` enter the polarizer a = a1 a2.
struct Splitting {
  IntMatrix positive;
  IntMatrix negative;
};

/// a = a1 a2, checked to satisfy a^iota = -a. Throws BadSplitting, BadPolarizer.
CliffordElement polarizer(const AlgebraPtr& A, const Splitting& s);

/// tr(a x y^iota).
Rational riemann_form(const CliffordElement& a, const CliffordElement& x, const CliffordElement& y);
Rational riemann_form(const Lattice& L, const Splitting& s, const CliffordElement& x, const CliffordElement& y);

/// a c^iota a^{-1}, the adjoint of left multiplication by c.
CliffordElement rosati(const CliffordElement& a, const CliffordElement& c);

struct KSReport {
  PeriodPlane plane;  // orthogonalized
  CliffordElement j;
  Rational j_square_scalar;
  RatMatrix riemann_gram;    // <e_S, e_T>_a
  RatMatrix hermitian_gram;  // <e_S j, e_T>_a
  bool alternating = false;
  bool symmetric = false;
  bool definite = false;
  Inertia inertia;
  Integer torus_dim;    // real dimension 2^rank
  Integer complex_dim;  // 2^(rank - 1)
};

/// Throws UnsupportedSignature unless sig(L) = (n, 2), IndefinitePlane or
/// NotNegativePlane for a bad plane, RankTooLarge above rank 8.
KSReport ks_report(const Lattice& L, const Splitting& s, const PeriodPlane& z);

/// x j_z == j_z x in C(V).
bool special_endo_test(const Lattice& L, const RatVector& x, const PeriodPlane& z);

struct SpecialLattice {
  IntMatrix basis;  // columns, a Z-basis of L n z^perp (possibly zero columns)
  IntMatrix gram;   // basis^T G basis

  Index rank() const { return basis.cols(); }
  std::optional<Lattice> lattice() const;
};

SpecialLattice special_endo_lattice(const Lattice& L, const PeriodPlane& z);

/// A rational orthogonal basis of V (columns), obtained by Gram-Schmidt with
/// pivot mixing for isotropic vectors.
RatMatrix orthogonal_basis(const Lattice& L);

struct CommutationProfile {
  bool delta_commutes = false;  // x omega = omega x
  bool parity_rule_ok = false;  // commutes for odd rank, anticommutes for even rank
  bool adjoint_ok = false;      // <y x, w>_a = <y, w x>_a on the sampled y, w
};

/// omega is the product of an orthogonal basis of V; for a non-orthogonal
/// lattice basis, e_1 ... e_n itself does not obey the parity rule. Without a
/// splitting the adjoint identity is checked with a = 1.
CommutationProfile commutation_profile(const Lattice& L, const RatVector& x,
                                       const std::optional<Splitting>& s = std::nullopt, int samples = 100,
                                       std::uint64_t seed = 1);

}  // namespace k3lat
