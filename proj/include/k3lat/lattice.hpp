#pragma once

// Integral quadratic lattices given by a Gram matrix in a fixed basis.
//
// Vectors of V = L (x) Q are coordinate vectors against the lattice basis, so
// (x, y) = x^T G y. The bilinear form is stored exactly as given; sign twists
// are explicit through rescale().

#include "k3lat/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

struct Signature {
  int p = 0;  // positive
  int q = 0;  // negative

  friend bool operator==(const Signature&, const Signature&) = default;
};

class Lattice {
 public:
  /// Throws DegenerateLattice when det(gram) == 0 and InvalidInput when the
  /// matrix is empty, non-square or not symmetric.
  explicit Lattice(IntMatrix gram, std::string name = {});

  const IntMatrix& gram() const { return gram_; }
  Index rank() const { return gram_.rows(); }
  const std::string& name() const { return name_; }
  const Integer& determinant() const { return det_; }

  Rational inner(const RatVector& x, const RatVector& y) const;
  Rational norm(const RatVector& x) const { return inner(x, x); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string name_;
  Integer det_;
};

/// A vector of L^vee representing a class in L^vee / L.
struct CosetVector {
  RatVector h;
};

struct DiscriminantGroup {
  std::vector<Integer> invariant_factors;  // d_1 | d_2 | ... , each > 1
  std::vector<RatVector> generators;       // generator i has order invariant_factors[i]
  Integer order = 1;
  Index ambient_rank = 0;
};

struct LatticeInfo {
  bool even = false;
  bool unimodular = false;
  Integer det;
};

enum class Tristate { no, yes, unknown };

struct NikulinVerdict {
  Tristate occurs = Tristate::unknown;
  Tristate unique = Tristate::unknown;
};

Signature signature(const Lattice& L);
bool is_positive_definite(const Lattice& L);
DiscriminantGroup discriminant_group(const Lattice& L);
LatticeInfo lattice_info(const Lattice& L);
bool is_even(const Lattice& L);

Lattice direct_sum(const Lattice& a, const Lattice& b);
/// Gram multiplied entrywise by n; n == 0 throws InvalidScale.
Lattice rescale(const Lattice& L, const Integer& n);

Lattice hyperbolic_plane();
Lattice a1_lattice();
/// Cartan matrix of E8: a chain 1-2-3-4-5-6-7 with node 8 attached to node 5.
Lattice e8_lattice();
/// H^3 (+) E8(-1)^2, the even unimodular lattice of signature (3,19).
Lattice k3_lattice();

/// "H", "A1", "E8", "E8(-1)", "K3"; nullopt for anything else.
std::optional<Lattice> builtin_lattice(const std::string& name);

/// Rank criteria for primitive embeddings of an even lattice into the K3
/// lattice, for signatures (2, n) and (1, n').
NikulinVerdict nikulin_embeddable(const Lattice& L);

bool in_dual(const Lattice& L, const RatVector& h);
/// Validated coset vector; throws NotInDualLattice.
CosetVector make_coset(const Lattice& L, RatVector h);
CosetVector zero_coset(const Lattice& L);

/// (h, h) reduced into [0, 2).
Rational coset_norm(const Lattice& L, const CosetVector& h);

/// Every element sum a_i g_i (0 <= a_i < d_i) of the discriminant group.
std::vector<RatVector> discriminant_elements(const DiscriminantGroup& D);

/// Canonical representative of h + L with coordinates in [0, 1).
RatVector reduce_mod_lattice(const RatVector& h);

}  // namespace k3lat
