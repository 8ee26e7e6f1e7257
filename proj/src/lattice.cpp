#include "k3lat/lattice.hpp"

#include "k3lat/errors.hpp"

namespace k3lat {

Lattice::Lattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
    throw Error(ErrorKind::InvalidInput, "Gram matrix must be square and nonempty");
  if (gram_ != gram_.transpose()) throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
  det_ = k3lat::determinant(gram_);
  if (det_.is_zero()) throw Error(ErrorKind::DegenerateLattice, "Gram matrix is degenerate (det = 0)");
}

Rational Lattice::inner(const RatVector& x, const RatVector& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw Error(ErrorKind::InvalidInput, "vector length does not match lattice rank");
  Rational s = 0;
  for (Index i = 0; i < rank(); ++i) {
    if (x(i).is_zero()) continue;
    Rational row = 0;
    for (Index j = 0; j < rank(); ++j)
      if (!y(j).is_zero()) row += Rational(gram_(i, j)) * y(j);
    s += x(i) * row;
  }
  return s;
}

Signature signature(const Lattice& L) {
  const Inertia in = inertia(L.gram());
  if (in.zero != 0) throw Error(ErrorKind::DegenerateLattice, "degenerate Gram matrix");
  return {in.positive, in.negative};
}

bool is_positive_definite(const Lattice& L) {
  return signature(L).q == 0;
}

DiscriminantGroup discriminant_group(const Lattice& L) {
  const SmithForm snf = smith_normal_form(L.gram());
  DiscriminantGroup D;
  D.ambient_rank = L.rank();
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
    const Integer& d = snf.diagonal[i];
    D.order *= d;
    if (d == 1) continue;
    RatVector g(L.rank());
    for (Index r = 0; r < L.rank(); ++r) g(r) = Rational(snf.V(r, static_cast<Index>(i)), d);
    D.invariant_factors.push_back(d);
    D.generators.push_back(reduce_mod_lattice(g));
  }
  return D;
}

bool is_even(const Lattice& L) {
  for (Index i = 0; i < L.rank(); ++i)
    if (L.gram()(i, i) % 2 != 0) return false;
  return true;
}

LatticeInfo lattice_info(const Lattice& L) {
  return {is_even(L), mp::abs(L.determinant()) == 1, L.determinant()};
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const Index n = a.rank() + b.rank();
  IntMatrix g = IntMatrix::Zero(n, n);
  g.topLeftCorner(a.rank(), a.rank()) = a.gram();
  g.bottomRightCorner(b.rank(), b.rank()) = b.gram();
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "+" + b.name();
  return Lattice(std::move(g), std::move(name));
}

Lattice rescale(const Lattice& L, const Integer& n) {
  if (n.is_zero()) throw Error(ErrorKind::InvalidScale, "rescale factor must be nonzero");
  std::string name;
  if (!L.name().empty()) name = L.name() + "(" + n.str() + ")";
  return Lattice(L.gram() * n, std::move(name));
}

Lattice hyperbolic_plane() {
  IntMatrix g(2, 2);
  g << 0, 1, 1, 0;
  return Lattice(std::move(g), "H");
}

Lattice a1_lattice() {
  IntMatrix g(1, 1);
  g << 2;
  return Lattice(std::move(g), "A1");
}

Lattice e8_lattice() {
  IntMatrix g = IntMatrix::Zero(8, 8);
  for (Index i = 0; i < 8; ++i) g(i, i) = 2;
  for (Index i = 0; i + 1 < 7; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(4, 7) = g(7, 4) = -1;
  return Lattice(std::move(g), "E8");
}

Lattice k3_lattice() {
  const Lattice h = hyperbolic_plane();
  const Lattice e8m = rescale(e8_lattice(), -1);
  const Lattice k = direct_sum(direct_sum(direct_sum(h, h), h), direct_sum(e8m, e8m));
  return Lattice(k.gram(), "K3");
}

std::optional<Lattice> builtin_lattice(const std::string& name) {
  if (name == "H") return hyperbolic_plane();
  if (name == "A1") return a1_lattice();
  if (name == "E8") return e8_lattice();
  if (name == "E8(-1)") return Lattice(rescale(e8_lattice(), -1).gram(), "E8(-1)");
  if (name == "K3") return k3_lattice();
  return std::nullopt;
}

NikulinVerdict nikulin_embeddable(const Lattice& L) {
  if (!is_even(L)) throw Error(ErrorKind::InvalidInput, "Nikulin criteria need an even lattice");
  const Signature s = signature(L);
  NikulinVerdict v;
  if (s.p == 2) {
    const int n = s.q;
    v.occurs = n <= 9 ? Tristate::yes : Tristate::unknown;
    v.unique = n < 9 ? Tristate::yes : Tristate::unknown;
  } else if (s.p == 1) {
    const int n = s.q;
    v.occurs = n <= 10 ? Tristate::yes : Tristate::unknown;
    v.unique = n < 10 ? Tristate::yes : Tristate::unknown;
  } else {
    throw Error(ErrorKind::UnsupportedSignature, "expected signature (2,n) or (1,n)");
  }
  return v;
}

bool in_dual(const Lattice& L, const RatVector& h) {
  if (h.size() != L.rank()) return false;
  for (Index i = 0; i < L.rank(); ++i) {
    Rational s = 0;
    for (Index j = 0; j < L.rank(); ++j) s += Rational(L.gram()(i, j)) * h(j);
    if (den(s) != 1) return false;
  }
  return true;
}

CosetVector make_coset(const Lattice& L, RatVector h) {
  if (h.size() != L.rank()) throw Error(ErrorKind::InvalidInput, "coset vector length does not match rank");
  if (!in_dual(L, h)) throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
  return CosetVector{std::move(h)};
}

CosetVector zero_coset(const Lattice& L) {
  return CosetVector{RatVector::Constant(L.rank(), Rational(0))};
}

Rational coset_norm(const Lattice& L, const CosetVector& h) {
  if (!in_dual(L, h.h)) throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
  const Rational q = L.norm(h.h);
  return q - Rational(2 * floor(q / 2));
}

RatVector reduce_mod_lattice(const RatVector& h) {
  RatVector r(h.size());
  for (Index i = 0; i < h.size(); ++i) r(i) = h(i) - Rational(floor(h(i)));
  return r;
}

std::vector<RatVector> discriminant_elements(const DiscriminantGroup& D) {
  const std::size_t k = D.generators.size();
  const Index n = D.ambient_rank;
  std::vector<RatVector> out;
  std::vector<Integer> digits(k, Integer(0));
  while (true) {
    RatVector h = RatVector::Constant(n, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      if (!digits[i].is_zero()) h += Rational(digits[i]) * D.generators[i];
    out.push_back(reduce_mod_lattice(h));
    std::size_t pos = 0;
    while (pos < k) {
      digits[pos] += 1;
      if (digits[pos] < D.invariant_factors[pos]) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return out;
}

}  // namespace k3lat
