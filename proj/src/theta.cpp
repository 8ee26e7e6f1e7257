#include "k3lat/theta.hpp"

#include "k3lat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace k3lat {

Rational QExpansion::coefficient(const Rational& t) const {
  const auto it = coeffs.find(t);
  return it == coeffs.end() ? Rational(0) : it->second;
}

QExpansion theta_coeffs(const Lattice& L, const CosetVector& h, const Rational& B, const EnumerationOptions& opts) {
  QExpansion f;
  f.weight = Rational(L.rank(), 2);
  f.nome = Nome::half;
  f.bound = B;
  for (const auto& [t, c] : norm_counts(L, h, B, opts)) f.coeffs.emplace(t, Rational(c));
  return f;
}

QExpansion classical_reindex(const QExpansion& f) {
  if (f.nome != Nome::half) throw Error(ErrorKind::InvalidInput, "series is already classically indexed");
  QExpansion g;
  g.weight = f.weight;
  g.nome = Nome::full;
  g.bound = f.bound / 2;
  for (const auto& [t, c] : f.coeffs) {
    if (den(t) != 1 || num(t) % 2 != 0) throw Error(ErrorKind::InvalidInput, "odd exponent " + to_string(t));
    g.coeffs.emplace(t / 2, c);
  }
  return g;
}

Rational bernoulli(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative Bernoulli index");
  // B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    Integer binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  return b[static_cast<std::size_t>(n)];
}

QExpansion eisenstein_sigma_coeffs(int k, int B) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::UnsupportedWeight, "weight must be even and at least 4");
  if (B < 0) throw Error(ErrorKind::InvalidInput, "negative bound");
  const Rational scale = Rational(-2 * k) / bernoulli(k);
  QExpansion f;
  f.weight = k;
  f.nome = Nome::full;
  f.bound = B;
  f.coeffs.emplace(Rational(0), Rational(1));
  for (int n = 1; n <= B; ++n) {
    Integer sigma = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) sigma += mp::pow(Integer(d), static_cast<unsigned>(k - 1));
    f.coeffs.emplace(Rational(n), scale * Rational(sigma));
  }
  return f;
}

// ---------------------------------------------------------------------------
// genus-r tables

Integer FourierTable::count(const RatMatrix& T) const {
  for (const auto& e : entries)
    if (e.T == T) return e.count;
  return 0;
}

namespace {

struct SlotVectors {
  std::vector<RatVector> x;
  std::vector<RatVector> gx;  // G x
  std::vector<Rational> norm;
};

SlotVectors slot_vectors(const Lattice& L, const CosetVector& h, const Rational& B, const EnumerationOptions& opts) {
  const ShortVectors sv = short_vectors(L, h, B, opts);
  std::vector<std::size_t> order(sv.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sv.norms[a] < sv.norms[b]; });
  const RatMatrix G = to_rational(L.gram());
  SlotVectors out;
  for (std::size_t i : order) {
    out.x.push_back(sv.vector(i));
    out.gx.push_back(G * out.x.back());
    out.norm.push_back(sv.norms[i]);
  }
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

}  // namespace

FourierTable siegel_theta_table(const Lattice& L, Index r, const Rational& B, const TupleCoset& H,
                                const EnumerationOptions& opts) {
  if (r < 1 || r > L.rank()) throw Error(ErrorKind::InvalidInput, "genus must satisfy 1 <= r <= rank");
  if (static_cast<Index>(H.entries.size()) != r) throw Error(ErrorKind::InvalidInput, "coset tuple length differs from genus");
  std::vector<SlotVectors> slots;
  for (const auto& h : H.entries) slots.push_back(slot_vectors(L, h, B, opts));

  const std::size_t cap = max_enumerated_vectors();
  std::size_t leaves = 0;
  std::map<std::vector<Rational>, Integer> hist;  // key: upper triangle row by row
  std::vector<std::size_t> pick(static_cast<std::size_t>(r));
  std::vector<Rational> key;

  auto rec = [&](auto&& self, std::size_t slot, const Rational& budget) -> void {
    if (slot == pick.size()) {
      if (++leaves > cap) throw Error(ErrorKind::ResourceLimit, "table exceeds K3LAT_MAX_VECTORS tuples");
      ++hist[key];
      return;
    }
    const SlotVectors& s = slots[slot];
    for (std::size_t v = 0; v < s.x.size() && s.norm[v] <= budget; ++v) {
      const std::size_t mark = key.size();
      pick[slot] = v;
      // entries (i, slot) for i < slot are appended after the diagonal
      key.push_back(s.norm[v]);
      for (std::size_t i = 0; i < slot; ++i) key.push_back(dot(slots[i].x[pick[i]], s.gx[v]));
      self(self, slot + 1, budget - s.norm[v]);
      key.resize(mark);
    }
  };
  rec(rec, 0, B);

  FourierTable table;
  table.genus = r;
  table.bound = B;
  for (const auto& [k, c] : hist) {
    RatMatrix T(r, r);
    std::size_t pos = 0;
    for (Index j = 0; j < r; ++j) {
      T(j, j) = k[pos++];
      for (Index i = 0; i < j; ++i) T(i, j) = T(j, i) = k[pos++];
    }
    table.entries.push_back({T, rank(T), c});
  }
  auto trace_of = [](const RatMatrix& T) {
    Rational s = 0;
    for (Index i = 0; i < T.rows(); ++i) s += T(i, i);
    return s;
  };
  auto upper = [](const RatMatrix& T) {
    std::vector<Rational> u;
    for (Index i = 0; i < T.rows(); ++i)
      for (Index j = i; j < T.cols(); ++j) u.push_back(T(i, j));
    return u;
  };
  std::sort(table.entries.begin(), table.entries.end(), [&](const FourierEntry& a, const FourierEntry& b) {
    const Rational ta = trace_of(a.T), tb = trace_of(b.T);
    if (ta != tb) return ta < tb;
    return upper(a.T) < upper(b.T);
  });
  return table;
}

FourierTable siegel_theta_table(const Lattice& L, Index r, const Rational& B, const EnumerationOptions& opts) {
  if (r < 1 || r > L.rank()) throw Error(ErrorKind::InvalidInput, "genus must satisfy 1 <= r <= rank");
  return siegel_theta_table(L, r, B, TupleCoset::zero(L, r), opts);
}

// ---------------------------------------------------------------------------
// numerical evaluation

void check_tau(const Complex& tau) {
  if (!(tau.imag() > 0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    throw Error(ErrorKind::InvalidTau, "tau must lie in the upper half plane");
}

Complex evaluate(const QExpansion& f, const Complex& tau) {
  check_tau(tau);
  const double factor = f.nome == Nome::half ? std::numbers::pi : 2 * std::numbers::pi;
  Complex s = 0;
  for (const auto& [t, c] : f.coeffs) {
    const double a = factor * t.convert_to<double>();
    s += c.convert_to<double>() * std::exp(-a * tau.imag()) * Complex(std::cos(a * tau.real()), std::sin(a * tau.real()));
  }
  return s;
}

namespace {

// sum_{t > B} N(t) e^{-pi t y}, where the number of x in L + h with
// (x, x) <= t is at most (2 sqrt(t / lambda) + 1)^n and lambda <= lambda_min(G).
double theta_tail_bound(const Lattice& L, double y, const Rational& B) {
  const RatMatrix inv = *inverse<Rational>(to_rational(L.gram()));
  Rational tr = 0;
  for (Index i = 0; i < inv.rows(); ++i) tr += inv(i, i);
  const double lambda = (Rational(1) / tr).convert_to<double>();
  const double n = static_cast<double>(L.rank());
  const double b = std::max(0.0, std::floor(B.convert_to<double>()));
  double total = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (long k = 0; k < 10000000; ++k) {
    const double t = b + static_cast<double>(k);
    const double log_term = n * std::log(2 * std::sqrt((t + 1) / lambda) + 1) - std::numbers::pi * y * t;
    const double term = std::exp(log_term);
    total += term;
    if (term < prev && (term == 0 || term < total * 1e-17)) return total;
    prev = term;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

ThetaValue theta_value(const Lattice& L, const CosetVector& h, const Complex& tau, const Rational& B,
                       const EnumerationOptions& opts) {
  check_tau(tau);
  const QExpansion f = theta_coeffs(L, h, B, opts);
  return {evaluate(f, tau), theta_tail_bound(L, tau.imag(), B)};
}

TransformCheck theta_transform_check(const Lattice& L, const Complex& tau, const Rational& B,
                                     const EnumerationOptions& opts) {
  check_tau(tau);
  const DiscriminantGroup D = discriminant_group(L);
  if (D.order > Integer(max_enumerated_vectors()))
    throw Error(ErrorKind::ResourceLimit, "discriminant group too large");

  const ThetaValue left = theta_value(L, zero_coset(L), -1.0 / tau, B, opts);
  Complex sum = 0;
  double tail = 0;
  for (const RatVector& h : discriminant_elements(D)) {
    const ThetaValue v = theta_value(L, make_coset(L, h), tau, B, opts);
    sum += v.value;
    tail += v.tail_bound;
  }
  const Complex factor = std::pow(tau / Complex(0, 1), static_cast<double>(L.rank()) / 2) /
                         std::sqrt(D.order.convert_to<double>());
  TransformCheck out;
  out.lhs = left.value;
  out.rhs = factor * sum;
  out.residual = std::abs(out.lhs - out.rhs);
  out.tail_bound = left.tail_bound + std::abs(factor) * tail;
  return out;
}

}  // namespace k3lat
