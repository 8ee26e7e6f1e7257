#pragma once

// Quadratic Gauss sums over L / cL and the Milgram sum over L^v / L.

#include "k3lat/lattice.hpp"

#include <complex>

namespace k3lat {

struct GaussSumValue {
  std::complex<double> value;
  Integer a;
  Integer c;
  Index rank = 0;
  double normalization = 1;  // c^{-rank/2}
};

/// c^{-n/2} sum_{x in L/cL} e^{pi i a (x,x) / c} for an even lattice L.
/// Throws InvalidModulus (c <= 0), OddLatticeUnsupported, TooManyTerms (c^n > 10^7).
GaussSumValue gauss_sum(const Lattice& L, const Integer& a, const Integer& c);

struct MilgramReport {
  std::complex<double> sum;        // sum_h e^{pi i (h,h)}
  std::complex<double> predicted;  // sqrt|D| e^{2 pi i (p - q) / 8}
  int signature_mod8 = 0;
  Integer group_order;
  bool agrees = false;  // |sum - predicted| < 1e-9
};

MilgramReport milgram_invariant(const Lattice& L);

}  // namespace k3lat
