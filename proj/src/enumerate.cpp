#include "k3lat/enumerate.hpp"

#include "k3lat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <thread>

namespace k3lat {

namespace {

using i128 = __int128;

// ---------------------------------------------------------------------------
// integer helpers shared by the two arithmetic back ends

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
Integer floor_div(const Integer& a, const Integer& b) { return k3lat::floor_div(a, b); }

i128 isqrt(i128 n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "isqrt of a negative integer");
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}
Integer isqrt(const Integer& n) { return k3lat::isqrt(n); }

std::int64_t to_i64(i128 x) { return static_cast<std::int64_t>(x); }
std::int64_t to_i64(const Integer& x) { return x.convert_to<std::int64_t>(); }

template <class Int>
Int from_integer(const Integer& x);

template <>
Integer from_integer<Integer>(const Integer& x) { return x; }

template <>
i128 from_integer<i128>(const Integer& x) {
  const Integer a = mp::abs(x);
  const Integer two64 = Integer(1) << 64;
  const auto hi = static_cast<std::uint64_t>((a / two64).convert_to<unsigned long long>());
  const auto lo = static_cast<std::uint64_t>((a % two64).convert_to<unsigned long long>());
  i128 v = (static_cast<i128>(hi) << 64) | static_cast<i128>(lo);
  return x.sign() < 0 ? -v : v;
}

// ---------------------------------------------------------------------------
// exact preparation

struct Prepared {
  int n = 0;
  Integer denom = 1;                  // D: x = z / D
  std::vector<Integer> residue;       // z_i = residue_i (mod D)
  std::vector<Integer> det;           // det[k] = det(G[0:k, 0:k]), det[0] = 1
  std::vector<std::vector<Integer>> w_row;  // w_row[i][j - i] = det(A_i) * S_i(i, j)
  Integer bound;                      // scaled norm bound N = floor(D^2 * bound)
  Integer zmax;                       // |z_i| <= zmax for every admissible z
  bool fits_i128 = false;
};

void require_positive_definite(const Lattice& L) {
  const Signature s = signature(L);
  if (s.q != 0) throw Error(ErrorKind::IndefiniteLattice, "enumeration needs a positive-definite lattice");
}

Prepared prepare(const Lattice& L, const RatVector& h, const Rational& bound) {
  require_positive_definite(L);
  if (h.size() != L.rank()) throw Error(ErrorKind::InvalidInput, "coset vector length does not match rank");
  if (!in_dual(L, h)) throw Error(ErrorKind::NotInDualLattice, "coset vector is not in the dual lattice");

  Prepared p;
  const IntMatrix& G = L.gram();
  const Index n = L.rank();
  p.n = static_cast<int>(n);
  p.denom = common_denominator(h);
  p.residue.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Rational scaled = h(i) * Rational(p.denom);
    Integer r = num(scaled) % p.denom;
    if (r.sign() < 0) r += p.denom;
    p.residue[static_cast<std::size_t>(i)] = r;
  }
  p.bound = bound.sign() < 0 ? Integer(-1) : floor(bound * Rational(p.denom * p.denom));

  p.det.resize(static_cast<std::size_t>(n) + 1);
  p.det[0] = 1;
  for (Index k = 1; k <= n; ++k) p.det[static_cast<std::size_t>(k)] = determinant(IntMatrix(G.topLeftCorner(k, k)));

  const RatMatrix Gq = to_rational(G);
  p.w_row.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    std::vector<Integer> row;
    RatVector y;
    if (i > 0) {
      auto sol = solve<Rational>(RatMatrix(Gq.topLeftCorner(i, i)), RatMatrix(Gq.block(0, i, i, 1)));
      y = sol->col(0);
    }
    const Rational scale(p.det[static_cast<std::size_t>(i)]);
    for (Index j = i; j < n; ++j) {
      Rational s = Gq(i, j);
      for (Index m = 0; m < i; ++m) s -= y(m) * Gq(m, j);
      s *= scale;
      if (den(s) != 1) throw Error(ErrorKind::InvalidInput, "internal: non-integral Schur complement row");
      row.push_back(num(s));
    }
    p.w_row[static_cast<std::size_t>(i)] = std::move(row);
  }

  // |z_i|^2 <= N (G^-1)_ii by Cauchy-Schwarz in the G-metric
  Integer zmax = 0;
  if (p.bound.sign() >= 0) {
    const RatMatrix Ginv = *inverse(Gq);
    for (Index i = 0; i < n; ++i) {
      const Integer zi = isqrt(ceil(Rational(p.bound) * Ginv(i, i))) + 1;
      zmax = std::max(zmax, zi);
    }
  }
  p.zmax = zmax + p.denom;
  if (!fits_int64(p.zmax * 4) || !fits_int64(p.bound))
    throw Error(ErrorKind::ResourceLimit, "enumeration bound too large for 64-bit coordinates");

  Integer wmax = 0, dmax = 0;
  for (const auto& row : p.w_row)
    for (const Integer& w : row) wmax = std::max(wmax, Integer(mp::abs(w)));
  for (const Integer& d : p.det) dmax = std::max(dmax, Integer(mp::abs(d)));
  const Integer bmax = Integer(n) * wmax * p.zmax;
  const Integer nb = mp::abs(p.bound) + 1;
  Integer magnitude = bmax * bmax + dmax * dmax * nb + dmax * p.zmax * p.zmax + bmax * p.zmax;
  magnitude *= 8;
  p.fits_i128 = magnitude < (Integer(1) << 124);
  return p;
}

// ---------------------------------------------------------------------------
// search

template <class Int>
struct Engine {
  int n = 0;
  Int D;
  std::vector<std::int64_t> residue;
  std::vector<Int> det;
  std::vector<std::vector<Int>> w_row;
  Int N;

  explicit Engine(const Prepared& p) : n(p.n) {
    D = from_integer<Int>(p.denom);
    for (const Integer& r : p.residue) residue.push_back(to_i64(r));
    for (const Integer& d : p.det) det.push_back(from_integer<Int>(d));
    for (const auto& row : p.w_row) {
      std::vector<Int> r;
      for (const Integer& w : row) r.push_back(from_integer<Int>(w));
      w_row.push_back(std::move(r));
    }
    N = from_integer<Int>(p.bound);
  }

  // Feasible values for z_{k-1} given the tail z_k..z_{n-1} with scaled partial value Vk.
  // Returns false if empty. Fills a, B, C so the child value is a z^2 + 2 B z + C.
  bool range(int k, const Int& Vk, const std::vector<std::int64_t>& z, Int& lo, Int& hi, Int& a, Int& B,
             Int& C) const {
    const int i = k - 1;
    a = det[static_cast<std::size_t>(k)];
    B = 0;
    const auto& w = w_row[static_cast<std::size_t>(i)];
    for (int j = k; j < n; ++j) {
      if (z[static_cast<std::size_t>(j)] != 0) B += w[static_cast<std::size_t>(j - i)] * Int(z[static_cast<std::size_t>(j)]);
    }
    const Int& di = det[static_cast<std::size_t>(i)];
    const Int R = di * (a * N - Vk);
    if (R < 0) return false;
    C = (B * B + di * Vk) / a;
    const Int s = isqrt(R);
    lo = -floor_div(s + B, a);  // ceil((-s - B) / a)
    hi = floor_div(s - B, a);
    // align to z = residue (mod D)
    const Int r = Int(residue[static_cast<std::size_t>(i)]);
    Int shift = (r - lo) % D;
    if (shift < 0) shift += D;
    lo += shift;
    return lo <= hi;
  }

  template <class Sink>
  void descend(int k, const Int& Vk, std::vector<std::int64_t>& z, Sink& sink) const {
    if (k == 0) {
      sink(z, Vk);
      return;
    }
    Int lo, hi, a, B, C;
    if (!range(k, Vk, z, lo, hi, a, B, C)) return;
    for (Int v = lo; v <= hi; v += D) {
      z[static_cast<std::size_t>(k - 1)] = to_i64(v);
      descend(k - 1, a * v * v + 2 * B * v + C, z, sink);
    }
    z[static_cast<std::size_t>(k - 1)] = 0;
  }

  // Runs the search; the top-level coordinate is split round-robin over threads.
  template <class Sink>
  std::vector<Sink> run(const Sink& prototype, unsigned threads) const {
    std::vector<std::int64_t> z(static_cast<std::size_t>(n), 0);
    Int lo, hi, a, B, C;
    std::vector<Sink> sinks;
    if (N < 0 || !range(n, Int(0), z, lo, hi, a, B, C)) {
      sinks.push_back(prototype);
      return sinks;
    }
    std::vector<std::int64_t> top;
    for (Int v = lo; v <= hi; v += D) top.push_back(to_i64(v));
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(top.size())));
    sinks.assign(threads, prototype);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
      try {
        std::vector<std::int64_t> zt(static_cast<std::size_t>(n), 0);
        for (std::size_t b = t; b < top.size(); b += threads) {
          const Int v(top[b]);
          zt[static_cast<std::size_t>(n - 1)] = top[b];
          descend(n - 1, a * v * v + 2 * B * v + C, zt, sinks[t]);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    return sinks;
  }
};

struct CollectSink {
  std::int64_t target = -1;  // collect only this scaled norm when >= 0
  std::size_t limit = 0;
  std::vector<std::vector<std::int64_t>> coords;
  std::vector<std::int64_t> values;

  template <class Int>
  void operator()(const std::vector<std::int64_t>& z, const Int& V) {
    const std::int64_t v = to_i64(V);
    if (target >= 0 && v != target) return;
    if (coords.size() >= limit)
      throw Error(ErrorKind::ResourceLimit, "enumeration exceeds K3LAT_MAX_VECTORS");
    coords.push_back(z);
    values.push_back(v);
  }
};

struct HistogramSink {
  std::int64_t target = -1;
  std::vector<std::uint64_t> dense;
  std::map<std::int64_t, std::uint64_t> sparse;

  template <class Int>
  void operator()(const std::vector<std::int64_t>&, const Int& V) {
    const std::int64_t v = to_i64(V);
    if (target >= 0 && v != target) return;
    if (!dense.empty()) ++dense[static_cast<std::size_t>(v)];
    else ++sparse[v];
  }
};

template <class Sink>
std::vector<Sink> search(const Prepared& p, const Sink& proto, unsigned threads) {
  if (p.fits_i128) return Engine<i128>(p).run(proto, threads);
  return Engine<Integer>(p).run(proto, threads);
}

std::map<std::int64_t, std::uint64_t> histogram(const Prepared& p, std::int64_t target, unsigned threads) {
  HistogramSink proto;
  proto.target = target;
  const std::int64_t N = to_i64(p.bound);
  if (N >= 0 && N <= 5'000'000) proto.dense.assign(static_cast<std::size_t>(N) + 1, 0);
  std::map<std::int64_t, std::uint64_t> total;
  for (const HistogramSink& s : search(p, proto, threads)) {
    for (std::size_t v = 0; v < s.dense.size(); ++v)
      if (s.dense[v] != 0) total[static_cast<std::int64_t>(v)] += s.dense[v];
    for (const auto& [v, c] : s.sparse) total[v] += c;
  }
  return total;
}

ShortVectors collect(const Prepared& p, std::int64_t target, unsigned threads) {
  CollectSink proto;
  proto.target = target;
  proto.limit = max_enumerated_vectors();
  std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> all;
  for (CollectSink& s : search(p, proto, threads))
    for (std::size_t i = 0; i < s.coords.size(); ++i) all.emplace_back(std::move(s.coords[i]), s.values[i]);
  if (all.size() > max_enumerated_vectors())
    throw Error(ErrorKind::ResourceLimit, "enumeration exceeds K3LAT_MAX_VECTORS");
  std::sort(all.begin(), all.end());
  ShortVectors out;
  out.denominator = to_i64(p.denom);
  const Rational d2(p.denom * p.denom);
  for (auto& [z, v] : all) {
    out.coords.push_back(std::move(z));
    out.norms.push_back(Rational(v) / d2);
  }
  return out;
}

// Scaled exact target D^2 t, or -1 when no vector of L + h can have norm t.
std::int64_t scaled_target(const Prepared& p, const Rational& t) {
  if (t.sign() < 0) return -1;
  const Rational s = t * Rational(p.denom * p.denom);
  if (den(s) != 1) return -1;
  return to_i64(num(s));
}

}  // namespace

std::size_t max_enumerated_vectors() {
  if (const char* env = std::getenv("K3LAT_MAX_VECTORS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

RatVector ShortVectors::vector(std::size_t i) const {
  RatVector v(static_cast<Index>(coords[i].size()));
  for (std::size_t j = 0; j < coords[i].size(); ++j) v(static_cast<Index>(j)) = Rational(coords[i][j], denominator);
  return v;
}

ShortVectors short_vectors(const Lattice& L, const CosetVector& h, const Rational& bound,
                           const EnumerationOptions& opts) {
  const Prepared p = prepare(L, h.h, bound);
  if (p.bound.sign() < 0) return ShortVectors{to_i64(p.denom), {}, {}};
  return collect(p, -1, opts.threads);
}

std::vector<RatVector> enumerate_vectors(const Lattice& L, const Rational& t, const CosetVector& h,
                                         const EnumerationOptions& opts) {
  const Prepared p = prepare(L, h.h, t);
  const std::int64_t target = scaled_target(p, t);
  std::vector<RatVector> out;
  if (target < 0) return out;
  const ShortVectors sv = collect(p, target, opts.threads);
  for (std::size_t i = 0; i < sv.size(); ++i) out.push_back(sv.vector(i));
  return out;
}

Integer rep_count(const Lattice& L, const Rational& t, const CosetVector& h, const EnumerationOptions& opts) {
  const Prepared p = prepare(L, h.h, t);
  const std::int64_t target = scaled_target(p, t);
  if (target < 0) return Integer(0);
  const auto hist = histogram(p, target, opts.threads);
  const auto it = hist.find(target);
  return it == hist.end() ? Integer(0) : Integer(it->second);
}

std::map<Rational, Integer> norm_counts(const Lattice& L, const CosetVector& h, const Rational& bound,
                                        const EnumerationOptions& opts) {
  const Prepared p = prepare(L, h.h, bound);
  std::map<Rational, Integer> out;
  if (p.bound.sign() < 0) return out;
  const Rational d2(p.denom * p.denom);
  for (const auto& [v, c] : histogram(p, -1, opts.threads)) out[Rational(v) / d2] = Integer(c);
  return out;
}

// ---------------------------------------------------------------------------
// tuples

GramTarget::GramTarget(RatMatrix T) : T_(std::move(T)) {
  if (T_.rows() == 0 || T_.rows() != T_.cols()) throw Error(ErrorKind::InvalidInput, "target must be square and nonempty");
  if (T_ != T_.transpose()) throw Error(ErrorKind::InvalidInput, "target Gram matrix is not symmetric");
  for (Index i = 0; i < T_.rows(); ++i)
    if (T_(i, i).sign() < 0) throw Error(ErrorKind::NegativeTarget, "target has a negative diagonal entry");
  const Inertia in = inertia(T_);
  if (in.negative != 0) throw Error(ErrorKind::NegativeTarget, "target is not positive semidefinite");
  rank_ = in.positive;
}

TupleCoset TupleCoset::zero(const Lattice& L, Index r) {
  return TupleCoset{std::vector<CosetVector>(static_cast<std::size_t>(r), zero_coset(L))};
}

namespace {

struct Candidates {
  std::int64_t denom = 1;
  std::vector<std::vector<std::int64_t>> z;   // scaled coordinates
  std::vector<std::vector<std::int64_t>> gz;  // G z
};

struct TupleProblem {
  std::vector<Candidates> slots;
  std::vector<std::vector<i128>> target;  // T_ij * D_i * D_j, valid when feasible
  bool feasible = true;
};

TupleProblem build_problem(const Lattice& L, const GramTarget& T, const TupleCoset& H,
                           const EnumerationOptions& opts) {
  const Index r = T.size();
  if (static_cast<Index>(H.entries.size()) != r)
    throw Error(ErrorKind::InvalidInput, "tuple coset length does not match target size");
  require_positive_definite(L);

  std::vector<std::int64_t> g;
  for (Index i = 0; i < L.rank(); ++i)
    for (Index j = 0; j < L.rank(); ++j) {
      if (!fits_int64(L.gram()(i, j))) throw Error(ErrorKind::ResourceLimit, "Gram entries exceed 64 bits");
      g.push_back(L.gram()(i, j).convert_to<std::int64_t>());
    }

  TupleProblem prob;
  for (Index i = 0; i < r; ++i) {
    const ShortVectors sv = [&] {
      const Prepared p = prepare(L, H.entries[static_cast<std::size_t>(i)].h, T.matrix()(i, i));
      const std::int64_t target = scaled_target(p, T.matrix()(i, i));
      if (target < 0) return ShortVectors{to_i64(p.denom), {}, {}};
      return collect(p, target, opts.threads);
    }();
    Candidates c;
    c.denom = sv.denominator;
    for (const auto& z : sv.coords) {
      std::vector<std::int64_t> gz(z.size(), 0);
      for (std::size_t a = 0; a < z.size(); ++a) {
        i128 s = 0;
        for (std::size_t b = 0; b < z.size(); ++b) s += static_cast<i128>(g[a * z.size() + b]) * z[b];
        if (s > INT64_MAX || s < INT64_MIN) throw Error(ErrorKind::ResourceLimit, "inner products exceed 64 bits");
        gz[a] = static_cast<std::int64_t>(s);
      }
      c.z.push_back(z);
      c.gz.push_back(std::move(gz));
    }
    if (c.z.empty()) prob.feasible = false;
    prob.slots.push_back(std::move(c));
  }

  prob.target.assign(static_cast<std::size_t>(r), std::vector<i128>(static_cast<std::size_t>(r), 0));
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j) {
      const Rational s = T.matrix()(i, j) * Rational(prob.slots[static_cast<std::size_t>(i)].denom) *
                         Rational(prob.slots[static_cast<std::size_t>(j)].denom);
      if (den(s) != 1 || !fits_int64(num(s))) {
        prob.feasible = false;
        continue;
      }
      prob.target[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num(s).convert_to<std::int64_t>();
    }
  return prob;
}

i128 dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  i128 s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<i128>(a[k]) * b[k];
  return s;
}

// Counts tuples (c_0, ..., c_{r-1}) with pairwise products equal to the target
// and accepted by `leaf`. The first slot is split across threads.
template <class Leaf>
Integer count_tuples(const TupleProblem& prob, unsigned threads, const Leaf& leaf) {
  if (!prob.feasible) return Integer(0);
  const std::size_t r = prob.slots.size();
  const std::size_t first = prob.slots[0].z.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(first)));
  std::vector<std::uint64_t> partial(threads, 0);

  auto work = [&](unsigned t) {
    std::vector<std::size_t> pick(r, 0);
    std::uint64_t count = 0;
    // depth-first over slots 1..r-1
    auto rec = [&](auto&& self, std::size_t slot) -> void {
      if (slot == r) {
        if (leaf(pick)) ++count;
        return;
      }
      const Candidates& cand = prob.slots[slot];
      for (std::size_t c = 0; c < cand.z.size(); ++c) {
        bool ok = true;
        for (std::size_t prev = 0; prev < slot && ok; ++prev)
          ok = dot(cand.z[c], prob.slots[prev].gz[pick[prev]]) == prob.target[slot][prev];
        if (!ok) continue;
        pick[slot] = c;
        self(self, slot + 1);
      }
    };
    for (std::size_t c0 = t; c0 < first; c0 += threads) {
      pick[0] = c0;
      rec(rec, 1);
    }
    partial[t] = count;
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Integer total = 0;
  for (std::uint64_t c : partial) total += Integer(c);
  return total;
}

}  // namespace

Integer tuple_rep_count(const Lattice& L, const GramTarget& T, const TupleCoset& H, const EnumerationOptions& opts) {
  const TupleProblem prob = build_problem(L, T, H, opts);
  return count_tuples(prob, opts.threads, [](const std::vector<std::size_t>&) { return true; });
}

Integer naive_stratum_count(const Lattice& L, const GramTarget& T, const TupleCoset& H,
                            const EnumerationOptions& opts) {
  const TupleProblem prob = build_problem(L, T, H, opts);
  const Index n = L.rank();
  const Index r = T.size();
  const Index want = T.rank();
  return count_tuples(prob, opts.threads, [&](const std::vector<std::size_t>& pick) {
    RatMatrix span(n, r);
    for (Index j = 0; j < r; ++j) {
      const Candidates& c = prob.slots[static_cast<std::size_t>(j)];
      const auto& z = c.z[pick[static_cast<std::size_t>(j)]];
      for (Index i = 0; i < n; ++i) span(i, j) = Rational(z[static_cast<std::size_t>(i)], c.denom);
    }
    return rank(span) == want;
  });
}

}  // namespace k3lat
