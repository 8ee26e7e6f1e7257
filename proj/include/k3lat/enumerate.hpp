#pragma once

// Exact enumeration of lattice vectors and r-tuples with prescribed Gram
// matrix in positive-definite lattices.
//
// The search is Fincke-Pohst style, but every bound is an integer: vectors are
// scaled by the common denominator D of the coset representative, and the
// partial norms are multiplied by leading principal minors so that pruning
// never leaves exact integer arithmetic (__int128 when the a-priori magnitude
// bound allows it, GMP otherwise).

#include "k3lat/lattice.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace k3lat {

struct EnumerationOptions {
  /// Worker threads for the top-level split; results do not depend on it.
  unsigned threads = 1;
};

/// Upper bound on materialised vectors, from K3LAT_MAX_VECTORS (default 10^7).
std::size_t max_enumerated_vectors();

/// Vectors x = coords / denominator of L + h with norm <= bound, together
/// with their norms, in lexicographic order of the coordinates.
struct ShortVectors {
  std::int64_t denominator = 1;
  std::vector<std::vector<std::int64_t>> coords;
  std::vector<Rational> norms;

  std::size_t size() const { return coords.size(); }
  RatVector vector(std::size_t i) const;
};

/// All x in L + h with (x, x) <= bound. Throws IndefiniteLattice.
ShortVectors short_vectors(const Lattice& L, const CosetVector& h, const Rational& bound,
                           const EnumerationOptions& opts = {});

/// All x in L + h with (x, x) == t, lexicographically sorted.
std::vector<RatVector> enumerate_vectors(const Lattice& L, const Rational& t, const CosetVector& h,
                                         const EnumerationOptions& opts = {});

/// |{x in L + h : (x, x) = t}|.
Integer rep_count(const Lattice& L, const Rational& t, const CosetVector& h,
                  const EnumerationOptions& opts = {});

/// Number of x in L + h for every norm value <= bound (norms with zero count omitted).
std::map<Rational, Integer> norm_counts(const Lattice& L, const CosetVector& h, const Rational& bound,
                                        const EnumerationOptions& opts = {});

/// Symmetric r x r target Gram matrix T(x) = ((x_i, x_j)).
class GramTarget {
 public:
  /// Throws InvalidInput if not symmetric, NegativeTarget if T is not
  /// positive semidefinite.
  explicit GramTarget(RatMatrix T);
  static GramTarget from_int(const IntMatrix& T) { return GramTarget(to_rational(T)); }

  const RatMatrix& matrix() const { return T_; }
  Index size() const { return T_.rows(); }
  Index rank() const { return rank_; }

 private:
  RatMatrix T_;
  Index rank_ = 0;
};

struct TupleCoset {
  std::vector<CosetVector> entries;

  static TupleCoset zero(const Lattice& L, Index r);
};

/// |{x in L^r + H : T(x) = T}| by backtracking over candidate lists.
Integer tuple_rep_count(const Lattice& L, const GramTarget& T, const TupleCoset& H,
                        const EnumerationOptions& opts = {});

/// Tuples as above whose components span a space of dimension rank(T).
Integer naive_stratum_count(const Lattice& L, const GramTarget& T, const TupleCoset& H,
                            const EnumerationOptions& opts = {});

}  // namespace k3lat
