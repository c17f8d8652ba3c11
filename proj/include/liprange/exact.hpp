#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "lipschitz.hpp"
#include "rng.hpp"

// Ground-truth engines: depth-first brute-force enumeration on small graphs,
// and an arbitrary-precision transfer engine for C_{n,k} over per-layer
// (min, max) summaries.  The summaries are sufficient because consecutive
// layers are joined completely, so the constraint between two layers depends
// only on their value extremes.

namespace lip {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

struct EnumerationCapExceeded : std::runtime_error {
  EnumerationCapExceeded() : std::runtime_error("too large for oracle: enumeration cap exceeded") {}
};

namespace detail {

struct Enumerator {
  const Graph& g;
  int v0;
  ModelKind kind;
  std::uint64_t cap;
  const std::function<void(const IntAssignment&)>* callback;

  std::vector<int> order;      // BFS order from v0
  std::vector<int> dist;
  IntAssignment values;
  std::uint64_t nodes = 0;
  std::uint64_t count = 0;

  void run() {
    dist = bfs_distances(g, v0);
    order.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    values.assign(g.vertex_count(), 0);
    descend(1);  // order[0] == v0 pinned to 0
  }

  void descend(std::size_t depth) {
    if (++nodes > cap) throw EnumerationCapExceeded{};
    if (depth == order.size()) {
      ++count;
      if (callback && *callback) (*callback)(values);
      return;
    }
    const int v = order[depth];
    const std::int64_t bound = kind.M * dist[v];
    std::int64_t lo = -bound, hi = bound;
    for (int w : g.neighbors(v)) {
      if (!assigned_before(w, v)) continue;
      lo = std::max(lo, values[w] - kind.M);
      hi = std::min(hi, values[w] + kind.M);
    }
    if (lo > hi) return;
    if (kind.model == Model::ZHomomorphism) {
      // Candidates are confined to the interval endpoints: with M = 1 every
      // assigned neighbor forces x into {f(w)-1, f(w)+1}.
      for (std::int64_t x : {lo, hi}) {
        if (step_ok(v, x)) {
          values[v] = x;
          descend(depth + 1);
        }
        if (lo == hi) break;
      }
      return;
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      values[v] = x;
      descend(depth + 1);
    }
  }

  // order is sorted by (dist, id); earlier entries are already assigned.
  bool assigned_before(int w, int v) const {
    return dist[w] < dist[v] || (dist[w] == dist[v] && w < v);
  }

  bool step_ok(int v, std::int64_t x) const {
    for (int w : g.neighbors(v)) {
      if (!assigned_before(w, v)) continue;
      if (std::llabs(x - values[w]) != 1) return false;
    }
    return true;
  }
};

}  // namespace detail

// Enumerates every pinned function of the model exactly once, in a
// deterministic order.  The callback (optional) sees each full assignment.
// Throws EnumerationCapExceeded when the DFS visits more than `cap` nodes.
inline std::uint64_t enumerate_bruteforce(
    const Graph& g, int v0, const ModelKind& kind,
    const std::function<void(const IntAssignment&)>& callback = {},
    std::uint64_t cap = kDefaultEnumerationCap) {
  if (!kind.integer_valued())
    throw std::invalid_argument("brute-force enumeration requires an integer model");
  if (kind.model == Model::ZHomomorphism && !g.is_bipartite())
    throw std::invalid_argument("Z-homomorphisms require a bipartite graph");
  if (!g.is_connected()) throw std::runtime_error("enumeration requires a connected graph");
  detail::Enumerator e{g, v0, kind, cap, &callback};
  e.run();
  return e.count;
}

inline mpz_class mpz_pow(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  if (base < 0) throw std::invalid_argument("negative base");
  mpz_class b(static_cast<long>(base)), out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
  return out;
}

// Number of k-tuples with values in [a, a+d] attaining both endpoints:
// inclusion-exclusion (d+1)^k - 2 d^k + (d-1)^k for d >= 1, and 1 for d = 0.
inline mpz_class count_layer_tuples(std::int64_t d, std::int64_t k) {
  if (d < 0 || k < 1) throw std::invalid_argument("count_layer_tuples needs d >= 0, k >= 1");
  if (d == 0) return 1;
  return mpz_pow(d + 1, k) - 2 * mpz_pow(d, k) + mpz_pow(d - 1, k);
}

// Same count with one coordinate pinned to 0; lo <= 0 <= hi required.
// The pinned coordinate already attains an endpoint when lo or hi is 0.
inline mpz_class count_pinned_layer_tuples(std::int64_t lo, std::int64_t hi, std::int64_t k) {
  if (lo > 0 || hi < 0) throw std::invalid_argument("pinned layer window must contain 0");
  if (k < 1) throw std::invalid_argument("k >= 1 required");
  const std::int64_t d = hi - lo;
  if (d == 0) return 1;
  const bool need_lo = lo < 0, need_hi = hi > 0;
  mpz_class out = mpz_pow(d + 1, k - 1);
  if (need_lo) out -= mpz_pow(d, k - 1);
  if (need_hi) out -= mpz_pow(d, k - 1);
  if (need_lo && need_hi) out += mpz_pow(d - 1, k - 1);
  return out;
}

// Per-layer (min, max) summary.
struct LayerState {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const LayerState&, const LayerState&) = default;
  friend auto operator<=>(const LayerState&, const LayerState&) = default;
};

inline constexpr std::size_t kDefaultStateCap = 200'000;

struct StateCapExceeded : std::runtime_error {
  StateCapExceeded() : std::runtime_error("transfer engine state space above configured cap") {}
};

// Cyclic transfer engine over LayerStates for C_{n,k}.  Layer 0 carries the
// pinned vertex; the DP conditions on the pinned layer's state and chains
// compatible states around the cycle.
class TransferModel {
 public:
  TransferModel(int n, int k, ModelKind kind,
                std::optional<std::pair<std::int64_t, std::int64_t>> window = std::nullopt,
                std::size_t state_cap = kDefaultStateCap)
      : n_(n), k_(k), kind_(kind), window_(window) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("transfer engine needs even n >= 4");
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    if (!kind.integer_valued()) throw std::invalid_argument("transfer engine is integer-only");
    if (window_ && (window_->first > 0 || window_->second < 0))
      throw std::invalid_argument("window must contain the pinned value 0");
    build_layers(state_cap);
  }

  int layer_count() const { return n_; }
  int layer_size() const { return k_; }
  const ModelKind& kind() const { return kind_; }
  const std::vector<LayerState>& layer_states(int j) const { return states_[j]; }

  bool compatible(const LayerState& a, const LayerState& b) const {
    if (kind_.model == Model::MLipschitz)
      return a.hi - b.lo <= kind_.M && b.hi - a.lo <= kind_.M;
    // Homomorphism: used values are exactly {lo, hi} in each layer (a width-2
    // layer cannot use its midpoint); every cross pair must differ by 1.
    const bool a2 = a.hi != a.lo, b2 = b.hi != b.lo;
    if (a2 && b2) return false;
    if (!a2 && !b2) return std::llabs(a.lo - b.lo) == 1;
    const LayerState& mono = a2 ? b : a;
    const LayerState& bi = a2 ? a : b;
    return bi.lo == mono.lo - 1 && bi.hi == mono.lo + 1;
  }

  mpz_class count() const {
    mpz_class total = 0;
    for (std::size_t p = 0; p < states_[0].size(); ++p) total += count_for_pinned(p);
    return total;
  }

  // Exact marginal distribution of layer `i`'s state under the uniform
  // measure, as (state, probability) pairs.
  std::vector<std::pair<LayerState, mpq_class>> layer_marginal(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("layer index out of range");
    std::map<LayerState, mpz_class> mass;
    mpz_class total = 0;
    for (std::size_t p = 0; p < states_[0].size(); ++p) {
      if (i == 0) {
        mpz_class w = count_for_pinned(p);
        mass[states_[0][p]] += w;
        total += w;
      } else {
        auto forward = forward_tables(p);
        auto after = after_tables(p);
        for (std::size_t s = 0; s < states_[i].size(); ++s) {
          mpz_class w = forward[i][s] * after[i][s];
          if (w != 0) mass[states_[i][s]] += w;
          total += w;
        }
      }
    }
    if (total == 0) throw std::runtime_error("empty model: no valid function");
    std::vector<std::pair<LayerState, mpq_class>> out;
    for (auto& [state, w] : mass) {
      mpq_class q(w, total);
      q.canonicalize();
      out.emplace_back(state, q);
    }
    return out;
  }

  // epsilon of the model: probability that a layer's value interval has
  // width other than M+1 (equivalently |interval| != M+1 for the forward
  // neighborhood of a vertex in the previous layer).  Layer choice is
  // immaterial: the width law is the same for every layer.
  mpq_class epsilon(int i = -1) const {
    if (i < 0) i = n_ / 2;
    mpq_class eps = 0;
    for (const auto& [state, p] : layer_marginal(i))
      if (state.hi - state.lo != kind_.M) eps += p;
    return eps;
  }

  // Probability that the edge between layers i and i+1 is ideal: both
  // endpoint neighborhoods (layers i-1 u i+1, resp. i u i+2) span the same
  // interval of exactly M+1 values.  Requires 1 <= i <= n-3.
  mpq_class ideal_edge_probability(int i) const {
    if (i < 1 || i > n_ - 3) throw std::invalid_argument("ideal edge needs 1 <= i <= n-3");
    mpz_class good = 0, total = 0;
    for (std::size_t p = 0; p < states_[0].size(); ++p) {
      auto forward = forward_tables(p);
      auto after = after_tables(p);
      const auto& s1v = states_[i - 1];
      const auto& s2v = states_[i];
      const auto& s3v = states_[i + 1];
      const auto& s4v = states_[i + 2];
      for (std::size_t a = 0; a < s1v.size(); ++a) {
        if (forward[i - 1][a] == 0) continue;
        for (std::size_t b = 0; b < s2v.size(); ++b) {
          if (!compatible(s1v[a], s2v[b])) continue;
          mpz_class wab = forward[i - 1][a] * weights_[i][b];
          if (wab == 0) continue;
          for (std::size_t c = 0; c < s3v.size(); ++c) {
            if (!compatible(s2v[b], s3v[c])) continue;
            mpz_class wabc = wab * weights_[i + 1][c];
            if (wabc == 0) continue;
            for (std::size_t d = 0; d < s4v.size(); ++d) {
              if (!compatible(s3v[c], s4v[d])) continue;
              mpz_class w = wabc * weights_[i + 2][d] * after[i + 2][d];
              if (w == 0) continue;
              total += w;
              const std::int64_t ulo = std::min(s1v[a].lo, s3v[c].lo);
              const std::int64_t uhi = std::max(s1v[a].hi, s3v[c].hi);
              const std::int64_t vlo = std::min(s2v[b].lo, s4v[d].lo);
              const std::int64_t vhi = std::max(s2v[b].hi, s4v[d].hi);
              if (uhi - ulo == kind_.M && ulo == vlo && uhi == vhi) good += w;
            }
          }
        }
      }
    }
    if (total == 0) throw std::runtime_error("empty model: no valid function");
    mpq_class q(good, total);
    q.canonicalize();
    return q;
  }

  // Exactly-uniform samples (forward filter, backward sampling).  M-Lipschitz
  // model only.
  std::vector<IntLipschitzFunction> sample(std::uint64_t seed, int count) const;

 private:
  void build_layers(std::size_t state_cap) {
    states_.resize(n_);
    weights_.resize(n_);
    std::size_t total_states = 0;
    for (int j = 0; j < n_; ++j) {
      const std::int64_t reach = std::min<std::int64_t>(j, n_ - j);
      const std::int64_t bound = kind_.M * (j == 0 ? 2 : reach);
      for (std::int64_t lo = -bound; lo <= bound; ++lo) {
        const std::int64_t max_width = kind_.model == Model::MLipschitz ? 2 * kind_.M : 2;
        for (std::int64_t hi = lo; hi <= std::min(lo + max_width, bound); ++hi) {
          if (j == 0 && (lo > 0 || hi < 0)) continue;
          if (window_ && (lo < window_->first || hi > window_->second)) continue;
          if (kind_.model == Model::ZHomomorphism) {
            if ((hi - lo) % 2 != 0 || hi - lo > 2) continue;
            if (((lo - reach) % 2 + 2) % 2 != 0) continue;  // parity of the layer
          }
          mpz_class w = layer_weight(j, lo, hi);
          if (w == 0) continue;
          states_[j].push_back({lo, hi});
          weights_[j].push_back(std::move(w));
          if (++total_states > state_cap) throw StateCapExceeded{};
        }
      }
    }
  }

  mpz_class layer_weight(int j, std::int64_t lo, std::int64_t hi) const {
    if (kind_.model == Model::MLipschitz) {
      if (j == 0) return count_pinned_layer_tuples(lo, hi, k_);
      return count_layer_tuples(hi - lo, k_);
    }
    // Homomorphism weights: a layer uses only the two endpoint values.
    if (j == 0) {
      if (lo == 0 && hi == 0) return 1;
      return mpz_pow(2, k_ - 1) - 1;  // (-2,0) or (0,2), pinned coordinate 0
    }
    if (lo == hi) return 1;
    return mpz_pow(2, k_) - 2;
  }

  // Forward DP: forward[j][s] = weight of chains layer 1..j ending in state s
  // (including layer j's weight), started from pinned state index p.
  std::vector<std::vector<mpz_class>> forward_tables(std::size_t p) const {
    std::vector<std::vector<mpz_class>> forward(n_);
    forward[0].assign(states_[0].size(), 0);
    forward[0][p] = weights_[0][p];
    for (int j = 1; j < n_; ++j) {
      forward[j].assign(states_[j].size(), 0);
      for (std::size_t s = 0; s < states_[j].size(); ++s) {
        mpz_class acc = 0;
        for (std::size_t t = 0; t < states_[j - 1].size(); ++t) {
          if (forward[j - 1][t] == 0) continue;
          if (compatible(states_[j - 1][t], states_[j][s])) acc += forward[j - 1][t];
        }
        if (acc != 0) forward[j][s] = acc * weights_[j][s];
      }
    }
    return forward;
  }

  // after[j][s] = weight of chains over layers j+1..n-1 given layer j state
  // s, including the final wrap-around compatibility with pinned state p.
  std::vector<std::vector<mpz_class>> after_tables(std::size_t p) const {
    std::vector<std::vector<mpz_class>> after(n_);
    after[n_ - 1].assign(states_[n_ - 1].size(), 0);
    for (std::size_t s = 0; s < states_[n_ - 1].size(); ++s)
      if (compatible(states_[n_ - 1][s], states_[0][p])) after[n_ - 1][s] = 1;
    for (int j = n_ - 2; j >= 0; --j) {
      after[j].assign(states_[j].size(), 0);
      for (std::size_t s = 0; s < states_[j].size(); ++s) {
        mpz_class acc = 0;
        for (std::size_t t = 0; t < states_[j + 1].size(); ++t) {
          if (after[j + 1][t] == 0) continue;
          if (compatible(states_[j][s], states_[j + 1][t]))
            acc += weights_[j + 1][t] * after[j + 1][t];
        }
        after[j][s] = acc;
      }
    }
    return after;
  }

  mpz_class count_for_pinned(std::size_t p) const {
    auto forward = forward_tables(p);
    mpz_class total = 0;
    for (std::size_t s = 0; s < states_[n_ - 1].size(); ++s)
      if (compatible(states_[n_ - 1][s], states_[0][p])) total += forward[n_ - 1][s];
    return total;
  }

  int n_, k_;
  ModelKind kind_;
  std::optional<std::pair<std::int64_t, std::int64_t>> window_;
  std::vector<std::vector<LayerState>> states_;
  std::vector<std::vector<mpz_class>> weights_;

  friend class TransferSampler;
};

// ---- convenience entry points ---------------------------------------------

inline mpz_class tm_count(int n, int k, const ModelKind& kind) {
  return TransferModel(n, k, kind).count();
}

// Exact count of pinned functions with all values in [a, b].
inline mpz_class tm_window_count(int n, int k, const ModelKind& kind, std::int64_t a,
                                 std::int64_t b) {
  if (a > 0 || b < 0) throw std::invalid_argument("window must contain the pinned value 0");
  if (a > b) throw std::invalid_argument("empty window");
  return TransferModel(n, k, kind, std::make_pair(a, b)).count();
}

// #{f : R(f) <= width} via the telescoping identity over width-sized windows:
// sum_a T([a, a+width-1]) - T([a+1, a+width-1]).  Windows that miss the
// pinned value contribute 0.
inline mpz_class tm_count_range_le(int n, int k, const ModelKind& kind, std::int64_t width) {
  if (width < 1) return 0;
  mpz_class total = 0;
  for (std::int64_t a = -(width - 1); a <= 0; ++a) {
    total += tm_window_count(n, k, kind, a, a + width - 1);
    if (a + 1 <= 0) total -= tm_window_count(n, k, kind, a + 1, a + width - 1);
  }
  return total;
}

inline mpq_class tm_prob_range_le(int n, int k, const ModelKind& kind, std::int64_t width) {
  mpq_class q(tm_count_range_le(n, k, kind, width), tm_count(n, k, kind));
  q.canonicalize();
  return q;
}

// ---- exact sampling --------------------------------------------------------

namespace detail {

inline mpz_class uniform_mpz_below(Substream& rng, const mpz_class& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    mpz_class r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      r <<= 64;
      r += mpz_class(static_cast<unsigned long>(rng.next_u64()));
    }
    r >>= words * 64 - bits;
    if (r < bound) return r;
  }
}

inline std::size_t sample_by_weight(Substream& rng, const std::vector<mpz_class>& weights) {
  mpz_class total = 0;
  for (const auto& w : weights) total += w;
  if (total == 0) throw std::runtime_error("sampling from empty weight vector");
  mpz_class r = uniform_mpz_below(rng, total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  throw std::logic_error("unreachable");
}

// Uniform k-tuple in [lo, hi]^k attaining both endpoints, sampled coordinate
// by coordinate with exact conditional counts.  `fixed_zero` marks the
// pinned-layer case where one extra coordinate is fixed to 0 beforehand.
inline std::vector<std::int64_t> sample_attaining_tuple(Substream& rng, std::int64_t lo,
                                                        std::int64_t hi, int k, bool fixed_zero) {
  const std::int64_t d = hi - lo;
  auto completions = [&](std::int64_t t, bool need_lo, bool need_hi) -> mpz_class {
    if (t == 0) return (need_lo || need_hi) ? mpz_class(0) : mpz_class(1);
    mpz_class out = mpz_pow(d + 1, t);
    if (need_lo) out -= mpz_pow(d, t);
    if (need_hi) out -= mpz_pow(d, t);
    if (need_lo && need_hi) out += d >= 1 ? mpz_pow(d - 1, t) : mpz_class(0);
    return out;
  };
  bool need_lo = fixed_zero ? lo < 0 : true;
  bool need_hi = fixed_zero ? hi > 0 : true;
  std::vector<std::int64_t> tuple;
  const int free_coords = fixed_zero ? k - 1 : k;
  for (int i = 0; i < free_coords; ++i) {
    const std::int64_t remaining = free_coords - i - 1;
    std::vector<mpz_class> weights(static_cast<std::size_t>(d) + 1);
    for (std::int64_t v = lo; v <= hi; ++v)
      weights[static_cast<std::size_t>(v - lo)] =
          completions(remaining, need_lo && v != lo, need_hi && v != hi);
    const std::int64_t v = lo + static_cast<std::int64_t>(sample_by_weight(rng, weights));
    tuple.push_back(v);
    if (v == lo) need_lo = false;
    if (v == hi) need_hi = false;
  }
  return tuple;
}

}  // namespace detail

inline std::vector<IntLipschitzFunction> TransferModel::sample(std::uint64_t seed,
                                                               int count) const {
  if (kind_.model != Model::MLipschitz)
    throw std::invalid_argument("transfer sampling implemented for the M-Lipschitz model");
  // Per-pinned-state totals fix the outer mixture; forward tables are reused
  // across samples.
  std::vector<mpz_class> pinned_totals(states_[0].size());
  std::vector<std::vector<std::vector<mpz_class>>> forwards(states_[0].size());
  for (std::size_t p = 0; p < states_[0].size(); ++p) {
    forwards[p] = forward_tables(p);
    mpz_class total = 0;
    for (std::size_t s = 0; s < states_[n_ - 1].size(); ++s)
      if (compatible(states_[n_ - 1][s], states_[0][p])) total += forwards[p][n_ - 1][s];
    pinned_totals[p] = total;
  }

  std::vector<IntLipschitzFunction> out;
  out.reserve(count);
  for (int sample_idx = 0; sample_idx < count; ++sample_idx) {
    Substream rng(seed, "tm_sample", static_cast<std::uint64_t>(sample_idx) << 32);
    const std::size_t p = detail::sample_by_weight(rng, pinned_totals);
    const auto& forward = forwards[p];

    // Backward pass over layer states.
    std::vector<std::size_t> chosen(n_);
    chosen[0] = p;
    {
      std::vector<mpz_class> w(states_[n_ - 1].size(), 0);
      for (std::size_t s = 0; s < states_[n_ - 1].size(); ++s)
        if (compatible(states_[n_ - 1][s], states_[0][p])) w[s] = forward[n_ - 1][s];
      chosen[n_ - 1] = detail::sample_by_weight(rng, w);
    }
    for (int j = n_ - 2; j >= 1; --j) {
      std::vector<mpz_class> w(states_[j].size(), 0);
      for (std::size_t s = 0; s < states_[j].size(); ++s)
        if (compatible(states_[j][s], states_[j + 1][chosen[j + 1]])) w[s] = forward[j][s];
      chosen[j] = detail::sample_by_weight(rng, w);
    }

    IntLipschitzFunction f;
    f.M = kind_.M;
    f.pinned = 0;
    f.values.assign(static_cast<std::size_t>(n_) * k_, 0);
    for (int j = 0; j < n_; ++j) {
      const LayerState s = states_[j][chosen[j]];
      auto tuple = detail::sample_attaining_tuple(rng, s.lo, s.hi, k_, j == 0);
      if (j == 0) {
        // vertex 0 is the pinned coordinate; the free tuple fills ids 1..k-1
        for (int a = 1; a < k_; ++a) f.values[a] = tuple[a - 1];
      } else {
        for (int a = 0; a < k_; ++a) f.values[static_cast<std::size_t>(j) * k_ + a] = tuple[a];
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<IntLipschitzFunction> tm_sample(int n, int k, std::int64_t M,
                                                   std::uint64_t seed, int count) {
  return TransferModel(n, k, ModelKind::m_lipschitz(M)).sample(seed, count);
}

}  // namespace lip
