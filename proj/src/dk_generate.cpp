#include "dkbench/dk_generate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "dkbench/errors.hpp"
#include "dkbench/rng.hpp"

namespace dkbench {

void GenParams::validate() const {
  if (swap_budget_factor <= 0 || max_attempts_factor <= 0) {
    throw ParamError("swap budget factors must be positive");
  }
  if (jdd_tolerance < 0) throw ParamError("jdd_tolerance must be >= 0");
  if (cspec_tolerance < 0) throw ParamError("cspec_tolerance must be >= 0");
  if (restarts < 0) throw ParamError("restarts must be >= 0");
}

namespace {

std::int64_t edge_key(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::int64_t>(u) * n + v;
}

// Mutable rewiring workspace. Degrees are fixed for the whole run: every move
// is a double-edge swap. Tracks the JDD L1 distance to the source target and,
// when enabled, per-degree triangle totals for the clustering spectrum.
struct RewireState {
  int n = 0;
  std::vector<int> deg;                      // static
  std::vector<std::vector<int>> adj;         // sorted neighbor vectors
  std::vector<std::pair<int, int>> edges;    // canonical (u < v)
  std::unordered_map<std::int64_t, int> edge_pos;

  // JDD tracking
  std::unordered_map<std::int64_t, std::int64_t> jdd_cur;
  const std::unordered_map<std::int64_t, std::int64_t>* jdd_target = nullptr;
  std::int64_t jdd_dist = 0;

  // triangle tracking (2.5K)
  bool track_triangles = false;
  std::vector<std::int64_t> tri;         // per node
  std::vector<std::int64_t> tri_by_deg;  // summed per degree class

  std::int64_t max_deg = 0;

  explicit RewireState(const Graph& g) {
    n = g.n_nodes();
    deg.resize(n);
    adj.resize(n);
    for (int u = 0; u < n; ++u) {
      deg[u] = g.degree(u);
      adj[u] = g.neighbors(u);
      max_deg = std::max<std::int64_t>(max_deg, deg[u]);
    }
    edges = g.edge_list();
    edge_pos.reserve(edges.size() * 2);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      edge_pos.emplace(edge_key(n, edges[i].first, edges[i].second), i);
    }
  }

  std::int64_t pair_key(int u, int v) const {
    return static_cast<std::int64_t>(std::min(deg[u], deg[v])) * (max_deg + 1) +
           std::max(deg[u], deg[v]);
  }

  void init_jdd(const std::unordered_map<std::int64_t, std::int64_t>& target) {
    jdd_target = &target;
    jdd_cur.clear();
    for (const auto& [u, v] : edges) ++jdd_cur[pair_key(u, v)];
    jdd_dist = 0;
    // union over both maps
    for (const auto& [k, c] : jdd_cur) {
      auto it = target.find(k);
      jdd_dist += std::abs(c - (it == target.end() ? 0 : it->second));
    }
    for (const auto& [k, c] : *jdd_target) {
      if (!jdd_cur.count(k)) jdd_dist += c;
    }
  }

  void init_triangles() {
    track_triangles = true;
    tri.assign(n, 0);
    tri_by_deg.assign(static_cast<std::size_t>(max_deg) + 1, 0);
    for (const auto& [u, v] : edges) {
      std::int64_t c = common_count(u, v);
      tri[u] += c;
      tri[v] += c;
    }
    // each triangle contributed 2 to every corner (once per incident edge pair)
    for (int u = 0; u < n; ++u) {
      tri[u] /= 2;
      tri_by_deg[deg[u]] += tri[u];
    }
  }

  bool has_edge(int u, int v) const {
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::int64_t common_count(int u, int v) const {
    const auto& a = adj[u];
    const auto& b = adj[v];
    std::int64_t c = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++c;
        ++ia;
        ++ib;
      }
    }
    return c;
  }

  void bump_common_triangles(int u, int v, int delta) {
    const auto& a = adj[u];
    const auto& b = adj[v];
    auto ia = a.begin();
    auto ib = b.begin();
    std::int64_t c = 0;
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        tri[*ia] += delta;
        tri_by_deg[deg[*ia]] += delta;
        ++c;
        ++ia;
        ++ib;
      }
    }
    tri[u] += delta * c;
    tri[v] += delta * c;
    tri_by_deg[deg[u]] += delta * c;
    tri_by_deg[deg[v]] += delta * c;
  }

  void jdd_bump(int u, int v, std::int64_t delta) {
    if (!jdd_target) return;
    const std::int64_t key = pair_key(u, v);
    auto& cur = jdd_cur[key];
    auto it = jdd_target->find(key);
    const std::int64_t tgt = it == jdd_target->end() ? 0 : it->second;
    jdd_dist -= std::abs(cur - tgt);
    cur += delta;
    jdd_dist += std::abs(cur - tgt);
  }

  void add_edge(int u, int v) {
    assert(u != v && !has_edge(u, v));
    if (track_triangles) bump_common_triangles(u, v, +1);
    auto& a = adj[u];
    a.insert(std::upper_bound(a.begin(), a.end(), v), v);
    auto& b = adj[v];
    b.insert(std::upper_bound(b.begin(), b.end(), u), u);
    edge_pos.emplace(edge_key(n, u, v), static_cast<int>(edges.size()));
    edges.emplace_back(std::min(u, v), std::max(u, v));
    jdd_bump(u, v, +1);
  }

  void remove_edge(int u, int v) {
    assert(has_edge(u, v));
    jdd_bump(u, v, -1);
    if (track_triangles) bump_common_triangles(u, v, -1);
    auto& a = adj[u];
    a.erase(std::lower_bound(a.begin(), a.end(), v));
    auto& b = adj[v];
    b.erase(std::lower_bound(b.begin(), b.end(), u));
    auto it = edge_pos.find(edge_key(n, u, v));
    const int pos = it->second;
    edge_pos.erase(it);
    const int last = static_cast<int>(edges.size()) - 1;
    if (pos != last) {
      edges[pos] = edges[last];
      edge_pos[edge_key(n, edges[pos].first, edges[pos].second)] = pos;
    }
    edges.pop_back();
  }

  Graph to_graph(const Graph& source) const {
    return Graph::from_edges(source.labels(), edges);
  }
};

// Swap described by the four endpoints: removes (a,b) and (c,d), adds (a,d)
// and (c,b). Callers have already validated simplicity.
struct Swap {
  int a, b, c, d;
};

void apply_swap(RewireState& s, const Swap& w) {
  s.remove_edge(w.a, w.b);
  s.remove_edge(w.c, w.d);
  s.add_edge(w.a, w.d);
  s.add_edge(w.c, w.b);
#ifndef NDEBUG
  for (int x : {w.a, w.b, w.c, w.d}) {
    assert(static_cast<int>(s.adj[x].size()) == s.deg[x]);
  }
#endif
}

void revert_swap(RewireState& s, const Swap& w) {
  s.remove_edge(w.a, w.d);
  s.remove_edge(w.c, w.b);
  s.add_edge(w.a, w.b);
  s.add_edge(w.c, w.d);
}

// Uniform double-edge swap proposal; false when the draw is rejected by the
// simplicity guards.
bool propose_random_swap(RewireState& s, Rng& rng, Swap& out) {
  const std::size_t m = s.edges.size();
  if (m < 2) return false;
  const std::size_t i = rng.index(m);
  const std::size_t j = rng.index(m);
  if (i == j) return false;
  auto [a, b] = s.edges[i];
  auto [c, d] = s.edges[j];
  if (rng.coin()) std::swap(a, b);
  if (rng.coin()) std::swap(c, d);
  if (a == d || c == b) return false;
  if (s.has_edge(a, d) || s.has_edge(c, b)) return false;
  out = {a, b, c, d};
  return true;
}

// JDD-preserving proposal: swaps partner endpoints of equal degree, so the
// multiset of edge degree pairs is untouched.
bool propose_2k_preserving_swap(RewireState& s, Rng& rng,
                                const std::vector<std::vector<int>>& by_degree,
                                Swap& out) {
  const std::size_t m = s.edges.size();
  if (m < 2) return false;
  auto [u1, v1] = s.edges[rng.index(m)];
  if (rng.coin()) std::swap(u1, v1);
  const auto& bucket = by_degree[s.deg[v1]];
  const int v2 = bucket[rng.index(bucket.size())];
  if (v2 == v1) return false;
  const auto& nb = s.adj[v2];
  if (nb.empty()) return false;
  const int u2 = nb[rng.index(nb.size())];
  if (u1 == v2 || u2 == v1) return false;
  if (s.has_edge(u1, v2) || s.has_edge(u2, v1)) return false;
  out = {u1, v1, u2, v2};  // removes (u1,v1),(u2,v2); adds (u1,v2),(u2,v1)
  return true;
}

std::vector<std::vector<int>> degree_buckets(const RewireState& s) {
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(s.max_deg) + 1);
  for (int u = 0; u < s.n; ++u) buckets[s.deg[u]].push_back(u);
  return buckets;
}

std::int64_t scaled(double factor, std::int64_t edges) {
  return static_cast<std::int64_t>(std::ceil(factor * static_cast<double>(edges)));
}

// Plain 1K randomization on an existing state.
void randomize_1k(RewireState& s, const GenParams& p, Rng& rng, GenStats& stats) {
  const std::int64_t target = scaled(p.swap_budget_factor, s.edges.size());
  const std::int64_t cap = scaled(p.max_attempts_factor, s.edges.size());
  std::int64_t accepted = 0;
  std::int64_t attempts = 0;
  Swap w{};
  while (accepted < target && attempts < cap) {
    ++attempts;
    if (!propose_random_swap(s, rng, w)) continue;
    apply_swap(s, w);
    ++accepted;
  }
  stats.accepted_swaps += accepted;
  stats.attempts += attempts;
  if (accepted < target) stats.swap_budget_met = false;
}

std::unordered_map<std::int64_t, std::int64_t> jdd_target_map(
    const RewireState& s) {
  std::unordered_map<std::int64_t, std::int64_t> target;
  for (const auto& [u, v] : s.edges) ++target[s.pair_key(u, v)];
  return target;
}

// Zero-temperature Metropolis targeting: accept swaps that do not increase
// the JDD L1 distance. Runs until the distance is within tol or the proposal
// budget is exhausted.
void target_jdd(RewireState& s, const GenParams& p, Rng& rng, GenStats& stats,
                std::int64_t tol) {
  const std::int64_t cap = scaled(p.max_attempts_factor, s.edges.size());
  std::int64_t attempts = 0;
  Swap w{};
  while (s.jdd_dist > tol && attempts < cap) {
    ++attempts;
    if (!propose_random_swap(s, rng, w)) continue;
    const std::int64_t before = s.jdd_dist;
    apply_swap(s, w);
    if (s.jdd_dist <= before) {
      ++stats.accepted_swaps;
    } else {
      revert_swap(s, w);
    }
  }
  stats.attempts += attempts;
}

// JDD-preserving randomization applied directly to the source state; the
// distance stays at its initial value (0 for a state built from g).
void randomize_2k_preserving(RewireState& s, const GenParams& p, Rng& rng,
                             GenStats& stats) {
  const auto buckets = degree_buckets(s);
  const std::int64_t target = scaled(p.swap_budget_factor, s.edges.size());
  const std::int64_t cap = scaled(p.max_attempts_factor, s.edges.size());
  std::int64_t accepted = 0;
  std::int64_t attempts = 0;
  Swap w{};
  while (accepted < target && attempts < cap) {
    ++attempts;
    if (!propose_2k_preserving_swap(s, rng, buckets, w)) continue;
    apply_swap(s, w);
    ++accepted;
  }
  stats.accepted_swaps += accepted;
  stats.attempts += attempts;
  if (accepted < target) stats.swap_budget_met = false;
}

// Produces a state whose JDD distance to g is within p.jdd_tolerance:
// 1K randomization plus targeting first, JDD-preserving fallback second.
RewireState make_2k_state(
    const Graph& g, const std::unordered_map<std::int64_t, std::int64_t>& target,
    const GenParams& p, std::uint64_t seed, GenStats& stats) {
  {
    RewireState s(g);
    s.init_jdd(target);
    Rng rng(derive_seed(seed, "2k-randomize"));
    randomize_1k(s, p, rng, stats);
    Rng rng2(derive_seed(seed, "2k-target"));
    target_jdd(s, p, rng2, stats, p.jdd_tolerance);
    if (s.jdd_dist <= p.jdd_tolerance) return s;
  }
  // targeting stalled: randomize g with JDD-preserving swaps instead
  stats.used_fallback = true;
  RewireState s(g);
  s.init_jdd(target);
  Rng rng(derive_seed(seed, "2k-fallback"));
  randomize_2k_preserving(s, p, rng, stats);
  return s;
}

// ----- 2.5K machinery -------------------------------------------------------

struct CspecTracker {
  std::vector<int> degrees;        // classes with degree >= 2, ascending
  std::vector<double> weight;      // node fraction per class
  std::vector<double> target;      // target cbar per class
  std::vector<double> inv_pairs;   // 2 / (k * (k-1) * count_k)

  double distance(const RewireState& s) const {
    double dist = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const double cur =
          static_cast<double>(s.tri_by_deg[degrees[i]]) * inv_pairs[i];
      dist += weight[i] * std::abs(cur - target[i]);
    }
    return dist;
  }

  double weighted_clustering(const RewireState& s) const {
    double w = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      w += weight[i] * static_cast<double>(s.tri_by_deg[degrees[i]]) *
           inv_pairs[i];
    }
    return w;
  }

  double weighted_target() const {
    double w = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) w += weight[i] * target[i];
    return w;
  }
};

// Targets come from the source state's own triangle totals so that the
// distance of the unmodified graph is exactly zero.
CspecTracker make_tracker(const RewireState& source_state) {
  CspecTracker t;
  std::vector<std::int64_t> count(
      static_cast<std::size_t>(source_state.max_deg) + 1, 0);
  for (int u = 0; u < source_state.n; ++u) ++count[source_state.deg[u]];
  for (int k = 2; k <= source_state.max_deg; ++k) {
    if (count[k] == 0) continue;
    t.degrees.push_back(k);
    t.weight.push_back(static_cast<double>(count[k]) /
                       static_cast<double>(source_state.n));
    const double inv = 2.0 / (static_cast<double>(k) *
                              static_cast<double>(k - 1) *
                              static_cast<double>(count[k]));
    t.inv_pairs.push_back(inv);
    t.target.push_back(static_cast<double>(source_state.tri_by_deg[k]) * inv);
  }
  return t;
}

struct StateSnapshot {
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> edges;
  std::unordered_map<std::int64_t, int> edge_pos;
  std::unordered_map<std::int64_t, std::int64_t> jdd_cur;
  std::int64_t jdd_dist;
  std::vector<std::int64_t> tri;
  std::vector<std::int64_t> tri_by_deg;
};

StateSnapshot snapshot(const RewireState& s) {
  return {s.adj, s.edges, s.edge_pos, s.jdd_cur, s.jdd_dist, s.tri, s.tri_by_deg};
}

void restore(RewireState& s, const StateSnapshot& snap) {
  s.adj = snap.adj;
  s.edges = snap.edges;
  s.edge_pos = snap.edge_pos;
  s.jdd_cur = snap.jdd_cur;
  s.jdd_dist = snap.jdd_dist;
  s.tri = snap.tri;
  s.tri_by_deg = snap.tri_by_deg;
}

// Cumulative wedge weights C(deg, 2) per node; degrees are static.
std::vector<std::int64_t> wedge_cumulative(const RewireState& s) {
  std::vector<std::int64_t> cum(s.n);
  std::int64_t acc = 0;
  for (int u = 0; u < s.n; ++u) {
    const std::int64_t d = s.deg[u];
    acc += d * (d - 1) / 2;
    cum[u] = acc;
  }
  return cum;
}

// Closes one uniformly selected open wedge x-v-y by the degree-preserving
// swap that removes (x,a) and (y,b) and adds (x,y) and (a,b). Perturbs the
// JDD; the caller repairs it afterwards.
bool close_random_wedge(RewireState& s, Rng& rng,
                        const std::vector<std::int64_t>& wedge_cum) {
  const std::int64_t total = wedge_cum.empty() ? 0 : wedge_cum.back();
  if (total == 0) return false;
  const std::int64_t t = static_cast<std::int64_t>(
      rng.below(static_cast<std::uint64_t>(total)));
  const int v = static_cast<int>(
      std::upper_bound(wedge_cum.begin(), wedge_cum.end(), t) -
      wedge_cum.begin());
  const auto& nv = s.adj[v];
  if (nv.size() < 2) return false;
  const std::size_t ix = rng.index(nv.size());
  std::size_t iy = rng.index(nv.size() - 1);
  if (iy >= ix) ++iy;
  const int x = nv[ix];
  const int y = nv[iy];
  if (s.has_edge(x, y)) return false;  // wedge already closed
  const auto& nx = s.adj[x];
  const auto& ny = s.adj[y];
  const int a = nx[rng.index(nx.size())];
  const int b = ny[rng.index(ny.size())];
  if (a == v || b == v || a == b) return false;
  if (a == y || b == x) return false;
  if (s.has_edge(a, b)) return false;
  s.remove_edge(x, a);
  s.remove_edge(y, b);
  s.add_edge(x, y);
  s.add_edge(a, b);
  return true;
}

struct Descent25kResult {
  bool converged = false;
  double cspec_distance = 0.0;
};

// Clustering-spectrum descent over JDD-preserving swaps with triangle-boost
// and shake rounds on stalls.
Descent25kResult descend_cspec(RewireState& s, const CspecTracker& tracker,
                               const GenParams& p, std::uint64_t seed,
                               GenStats& stats) {
  const auto buckets = degree_buckets(s);
  const auto wedge_cum = wedge_cumulative(s);
  const std::int64_t edges_n = static_cast<std::int64_t>(s.edges.size());
  const std::int64_t cap = scaled(p.max_attempts_factor, edges_n) * 4;
  const std::int64_t stall_window = std::max<std::int64_t>(500, 2 * edges_n);
  const std::int64_t boost_k = std::max<std::int64_t>(2, edges_n / 50);
  const double w_target = tracker.weighted_target();

  Rng rng(derive_seed(seed, "25k-descent"));
  double dist = tracker.distance(s);
  std::int64_t attempts = 0;
  std::int64_t rejects = 0;
  Swap w{};

  bool boost_enabled = true;
  while (dist > p.cspec_tolerance && attempts < cap) {
    ++attempts;
    if (propose_2k_preserving_swap(s, rng, buckets, w)) {
      apply_swap(s, w);
      const double cand = tracker.distance(s);
      if (cand <= dist) {
        dist = cand;
        ++stats.accepted_swaps;
        rejects = 0;
        continue;
      }
      revert_swap(s, w);
    }
    if (++rejects < stall_window) continue;
    rejects = 0;
    if (boost_enabled && tracker.weighted_clustering(s) < w_target) {
      // triangle boost: close wedges, then repair the JDD; roll back if the
      // repair cannot reach the tolerance
      auto snap = snapshot(s);
      std::int64_t closed = 0;
      for (std::int64_t i = 0; i < boost_k * 50 && closed < boost_k; ++i) {
        if (close_random_wedge(s, rng, wedge_cum)) ++closed;
      }
      stats.accepted_swaps += closed;
      target_jdd(s, p, rng, stats, p.jdd_tolerance);
      if (s.jdd_dist > p.jdd_tolerance) {
        restore(s, snap);
        boost_enabled = false;
      }
    } else {
      // shake: a few unconditional JDD-preserving swaps to leave the plateau
      std::int64_t done = 0;
      for (std::int64_t i = 0; i < boost_k * 50 && done < boost_k; ++i) {
        if (propose_2k_preserving_swap(s, rng, buckets, w)) {
          apply_swap(s, w);
          ++done;
        }
      }
      stats.accepted_swaps += done;
    }
    dist = tracker.distance(s);
  }
  stats.attempts += attempts;
  return {dist <= p.cspec_tolerance && s.jdd_dist <= p.jdd_tolerance, dist};
}

// Terminal fallback: a JDD-preserving walk started at g itself that only
// accepts states within the clustering tolerance. Every visited state is a
// valid output, so this cannot fail; low acceptance merely reduces variety.
GenResult constrained_walk(const Graph& g,
                           const std::unordered_map<std::int64_t, std::int64_t>& target,
                           const GenParams& p, std::uint64_t seed) {
  GenStats stats;
  stats.used_fallback = true;
  RewireState s(g);
  s.init_jdd(target);
  s.init_triangles();
  const CspecTracker tracker = make_tracker(s);
  const auto buckets = degree_buckets(s);
  const std::int64_t budget = scaled(p.swap_budget_factor, s.edges.size());
  const std::int64_t cap = scaled(p.max_attempts_factor, s.edges.size());
  Rng rng(derive_seed(seed, "25k-walk"));
  std::int64_t accepted = 0;
  std::int64_t attempts = 0;
  Swap w{};
  while (accepted < budget && attempts < cap) {
    ++attempts;
    if (!propose_2k_preserving_swap(s, rng, buckets, w)) continue;
    apply_swap(s, w);
    if (tracker.distance(s) <= p.cspec_tolerance) {
      ++accepted;
    } else {
      revert_swap(s, w);
    }
  }
  stats.accepted_swaps = accepted;
  stats.attempts = attempts;
  stats.swap_budget_met = accepted >= budget;
  stats.jdd_distance = s.jdd_dist;
  stats.cspec_distance = tracker.distance(s);
  return {s.to_graph(g), stats};
}

void require_rewirable(const Graph& g) {
  if (g.n_edges() < 2) {
    throw ParamError("rewiring requires at least 2 edges");
  }
}

}  // namespace

GenResult generate_1k(const Graph& g, const GenParams& p) {
  p.validate();
  require_rewirable(g);
  GenStats stats;
  RewireState s(g);
  Rng rng(derive_seed(p.rng_seed, "1k"));
  randomize_1k(s, p, rng, stats);
  return {s.to_graph(g), stats};
}

GenResult generate_2k(const Graph& g, const GenParams& p) {
  p.validate();
  require_rewirable(g);
  GenStats stats;
  RewireState source(g);
  const auto target = jdd_target_map(source);
  RewireState s = make_2k_state(g, target, p, p.rng_seed, stats);
  if (s.jdd_dist > p.jdd_tolerance) {
    throw ConvergenceError("2K targeting did not reach tolerance", s.jdd_dist, 0.0);
  }
  stats.jdd_distance = s.jdd_dist;
  return {s.to_graph(g), stats};
}

GenResult generate_25k(const Graph& g, const GenParams& p) {
  p.validate();
  require_rewirable(g);
  RewireState source(g);
  const auto target = jdd_target_map(source);
  source.init_triangles();
  const CspecTracker tracker = make_tracker(source);

  for (int round = 0; round <= p.restarts; ++round) {
    GenStats stats;
    const std::uint64_t seed = derive_seed(p.rng_seed, "25k-round", round);
    RewireState s = make_2k_state(g, target, p, seed, stats);
    if (s.jdd_dist > p.jdd_tolerance) continue;
    s.init_triangles();
    const auto res = descend_cspec(s, tracker, p, seed, stats);
    if (res.converged) {
      stats.jdd_distance = s.jdd_dist;
      stats.cspec_distance = res.cspec_distance;
      return {s.to_graph(g), stats};
    }
  }
  return constrained_walk(g, target, p, p.rng_seed);
}

GenResult generate(const Graph& g, const GenParams& p) {
  switch (p.level) {
    case DkLevel::GS: {
      GenResult r;
      r.graph = g;
      return r;
    }
    case DkLevel::OneK: return generate_1k(g, p);
    case DkLevel::TwoK: return generate_2k(g, p);
    case DkLevel::TwoFiveK: return generate_25k(g, p);
  }
  throw ParamError("unknown dK level");
}

}  // namespace dkbench
