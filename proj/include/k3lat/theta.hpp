#pragma once

// Truncated q-expansions: theta series of positive-definite lattices and
// cosets, genus-r coefficient tables, and Eisenstein series oracles.

#include "k3lat/enumerate.hpp"

#include <complex>
#include <map>
#include <vector>

namespace k3lat {

using Complex = std::complex<double>;

/// Which nome the exponents refer to.
enum class Nome {
  half,  // q = e^{pi i tau}, exponents are norms (x, x)
  full,  // q = e^{2 pi i tau}, classical indexing
};

struct QExpansion {
  Rational weight;
  Nome nome = Nome::half;
  Rational bound;
  std::map<Rational, Rational> coeffs;  // zero coefficients omitted

  Rational coefficient(const Rational& t) const;
};

/// theta_{L+h} = sum_{x in L+h} q^{(x,x)}, all exponents <= B.
QExpansion theta_coeffs(const Lattice& L, const CosetVector& h, const Rational& B,
                        const EnumerationOptions& opts = {});

/// Exponents t -> t/2 and nome half -> full. Throws InvalidInput if some
/// exponent is not even, i.e. the lattice is not even.
QExpansion classical_reindex(const QExpansion& f);

/// 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for n <= B, q = e^{2 pi i tau}.
QExpansion eisenstein_sigma_coeffs(int k, int B);

/// Exact Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(int n);

struct FourierEntry {
  RatMatrix T;
  Index rank = 0;  // rank of T, the stratum label
  Integer count;
};

struct FourierTable {
  Index genus = 1;
  Rational bound;
  std::vector<FourierEntry> entries;  // sorted by trace, then upper triangle

  /// Count for T, zero when T does not occur.
  Integer count(const RatMatrix& T) const;
};

/// tuple_rep_count(L, T, H) for every T that occurs with tr T <= B.
FourierTable siegel_theta_table(const Lattice& L, Index r, const Rational& B, const TupleCoset& H,
                                const EnumerationOptions& opts = {});
FourierTable siegel_theta_table(const Lattice& L, Index r, const Rational& B,
                                const EnumerationOptions& opts = {});

struct ThetaValue {
  Complex value;
  double tail_bound = 0;  // bound on |omitted terms|
};

void check_tau(const Complex& tau);

/// Sum of the series at tau. Throws InvalidTau when Im tau <= 0.
Complex evaluate(const QExpansion& f, const Complex& tau);

/// Truncated theta_{L+h}(tau) with exponents <= B and a bound on the tail.
ThetaValue theta_value(const Lattice& L, const CosetVector& h, const Complex& tau, const Rational& B,
                       const EnumerationOptions& opts = {});

struct TransformCheck {
  double residual = 0;
  double tail_bound = 0;  // combined truncation bound for both sides
  Complex lhs, rhs;
};

/// |theta_L(-1/tau) - (tau/i)^{m/2} |L^v/L|^{-1/2} sum_h theta_{L+h}(tau)|.
TransformCheck theta_transform_check(const Lattice& L, const Complex& tau, const Rational& B,
                                     const EnumerationOptions& opts = {});

}  // namespace k3lat
