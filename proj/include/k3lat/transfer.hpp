#pragma once

// Quadratic O_F-lattices over a totally real field F, their transfer to
// Z-lattices through tr_{F/Q}, per-embedding signatures, and trace-zero
// lattices in quaternion orders.

#include "k3lat/lattice.hpp"
#include "k3lat/number_field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

/// Free O_F-lattice with basis m_1..m_r and Gram matrix (m_i, m_j) in F.
struct NumberFieldLattice {
  FieldPtr field;
  FieldMatrix gram;

  Index rank() const { return gram.rows(); }
};

/// Checks symmetry and that entries live in `field`. Throws InvalidInput.
NumberFieldLattice make_nf_lattice(FieldPtr field, FieldMatrix gram);

/// Gram of tr(omega_k omega_l (m_i, m_j)) on the basis omega_k m_i, index
/// i * d + k.
RatMatrix trace_gram(const NumberFieldLattice& M);

/// Throws DegenerateTransfer for a degenerate form, InvalidInput when the
/// trace form is not integral.
Lattice trace_lattice(const NumberFieldLattice& M);

/// One signature per real embedding, in ascending root order.
using SignatureProfile = std::vector<Signature>;

/// Throws DegenerateTransfer, PrecisionExhausted.
SignatureProfile signature_profile(const NumberFieldLattice& M);

/// Profile (2, m) at embedding `distinguished` and (0, m + 2) elsewhere, with
/// m = rank - 2. Without an index every embedding is tried.
bool ks_admissible(const NumberFieldLattice& M, std::optional<int> distinguished = std::nullopt);

struct FeasibilityRow {
  int d = 0;
  std::vector<int> m;
  std::vector<int> N;  // N = d (m + 2) - 2
};

/// All d >= 2, m >= 0 with 2 <= d (m + 2) <= 21.
std::vector<FeasibilityRow> feasibility_table();

/// CSV with header d,m,N. Three or more values print as lo<=x<=hi, two as a
/// quoted list "a, b", one as the bare value.
std::string feasibility_csv(const std::vector<FeasibilityRow>& rows);

/// Quaternion in the basis 1, i, j, ij of (a, b / F).
using Quaternion = std::array<FieldElement, 4>;

struct QuaternionAlgebra {
  FieldElement a, b;

  Quaternion multiply(const Quaternion& x, const Quaternion& y) const;
  static Quaternion conjugate(const Quaternion& x);
  static FieldElement reduced_trace(const Quaternion& x);
  FieldElement reduced_norm(const Quaternion& x) const;
};

/// Trace-zero part of the O_F-order spanned by `order_basis`, with the form
/// tr_red(x y-bar). Throws InvalidInput for a = 0 or b = 0, NotAnOrder, and
/// UnsupportedOrder when the trace-zero submodule has no basis of the form
/// b_l - c b_k.
NumberFieldLattice quaternion_trace_zero(const FieldPtr& F, const FieldElement& a, const FieldElement& b,
                                         const std::array<Quaternion, 4>& order_basis);

}  // namespace k3lat
