// Test-only brute-force oracles and graph builders. Everything here is
// independent of the library's metric implementations: triples and triangles
// by exhaustive enumeration, shortest paths by Floyd-Warshall, Pearson by the
// textbook formula.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dkbench/graph.hpp"
#include "dkbench/rng.hpp"

namespace oracle {

// Dense adjacency mirror of a dkbench::Graph.
struct Dense {
  int n;
  std::vector<std::vector<bool>> adj;

  explicit Dense(const dkbench::Graph& g) : n(g.n_nodes()) {
    adj.assign(n, std::vector<bool>(n, false));
    for (int u = 0; u < n; ++u) {
      for (int v : g.neighbors(u)) adj[u][v] = true;
    }
  }

  int degree(int u) const {
    int d = 0;
    for (int v = 0; v < n; ++v) d += adj[u][v] ? 1 : 0;
    return d;
  }

  std::int64_t edges() const {
    std::int64_t m = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) m += adj[u][v] ? 1 : 0;
    }
    return m;
  }
};

inline std::optional<double> density(const Dense& d) {
  if (d.n < 2) return std::nullopt;
  return 2.0 * static_cast<double>(d.edges()) /
         (static_cast<double>(d.n) * (d.n - 1));
}

inline std::int64_t triangles(const Dense& d) {
  std::int64_t t = 0;
  for (int a = 0; a < d.n; ++a) {
    for (int b = a + 1; b < d.n; ++b) {
      for (int c = b + 1; c < d.n; ++c) {
        if (d.adj[a][b] && d.adj[b][c] && d.adj[a][c]) ++t;
      }
    }
  }
  return t;
}

inline std::int64_t triples(const Dense& d) {
  // paths of length two, counted at their center
  std::int64_t t = 0;
  for (int c = 0; c < d.n; ++c) {
    for (int a = 0; a < d.n; ++a) {
      if (a == c || !d.adj[c][a]) continue;
      for (int b = a + 1; b < d.n; ++b) {
        if (b == c || !d.adj[c][b]) continue;
        ++t;
      }
    }
  }
  return t;
}

inline std::optional<double> transitivity(const Dense& d) {
  const std::int64_t tr = triples(d);
  if (tr == 0) return std::nullopt;
  return 3.0 * static_cast<double>(triangles(d)) / static_cast<double>(tr);
}

inline double local_clustering(const Dense& d, int u) {
  const int deg = d.degree(u);
  if (deg < 2) return 0.0;
  std::int64_t links = 0;
  for (int a = 0; a < d.n; ++a) {
    if (!d.adj[u][a]) continue;
    for (int b = a + 1; b < d.n; ++b) {
      if (d.adj[u][b] && d.adj[a][b]) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) /
         (static_cast<double>(deg) * (deg - 1));
}

inline std::optional<double> avg_clustering(const Dense& d) {
  if (d.n == 0) return std::nullopt;
  double sum = 0.0;
  for (int u = 0; u < d.n; ++u) sum += local_clustering(d, u);
  return sum / d.n;
}

inline std::optional<double> assortativity(const Dense& d) {
  std::vector<std::pair<double, double>> points;
  for (int u = 0; u < d.n; ++u) {
    for (int v = 0; v < d.n; ++v) {
      if (u != v && d.adj[u][v]) {
        points.emplace_back(d.degree(u), d.degree(v));
      }
    }
  }
  if (points.empty()) return std::nullopt;
  const double m = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m;
  const double my = sy / m;
  double vx = 0, vy = 0, cov = 0;
  for (auto [x, y] : points) {
    vx += (x - mx) * (x - mx);
    vy += (y - my) * (y - my);
    cov += (x - mx) * (y - my);
  }
  if (vx <= 0 || vy <= 0) return std::nullopt;
  return cov / std::sqrt(vx * vy);
}

inline std::optional<double> avg_path_length(const Dense& d) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> dist(d.n, std::vector<int>(d.n, kInf));
  for (int u = 0; u < d.n; ++u) dist[u][u] = 0;
  for (int u = 0; u < d.n; ++u) {
    for (int v = 0; v < d.n; ++v) {
      if (d.adj[u][v]) dist[u][v] = 1;
    }
  }
  for (int k = 0; k < d.n; ++k) {
    for (int i = 0; i < d.n; ++i) {
      for (int j = 0; j < d.n; ++j) {
        if (dist[i][k] + dist[k][j] < dist[i][j]) {
          dist[i][j] = dist[i][k] + dist[k][j];
        }
      }
    }
  }
  std::int64_t sum = 0;
  std::int64_t pairs = 0;
  for (int i = 0; i < d.n; ++i) {
    for (int j = i + 1; j < d.n; ++j) {
      if (dist[i][j] < kInf) {
        sum += dist[i][j];
        ++pairs;
      }
    }
  }
  if (pairs == 0) return std::nullopt;
  return static_cast<double>(sum) / static_cast<double>(pairs);
}

inline std::optional<double> degree_one_pct(const Dense& d) {
  if (d.n == 0) return std::nullopt;
  int ones = 0;
  for (int u = 0; u < d.n; ++u) ones += d.degree(u) == 1 ? 1 : 0;
  return 100.0 * ones / d.n;
}

// ----- builders ---------------------------------------------------------------

using Edge = std::pair<std::string, std::string>;

inline dkbench::Graph from_edges(const std::vector<Edge>& edges,
                                 const std::vector<std::string>& isolated = {}) {
  return dkbench::Graph::from_label_edges(edges, isolated);
}

inline std::string node_name(int i) {
  // zero-padded so lexicographic label order equals numeric order
  char buf[16];
  std::snprintf(buf, sizeof(buf), "n%04d", i);
  return buf;
}

inline dkbench::Graph from_index_edges(int n,
                                       const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = node_name(i);
  return dkbench::Graph::from_edges(std::move(labels), edges);
}

inline dkbench::Graph triangle() {
  return from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

inline dkbench::Graph path3() { return from_edges({{"a", "b"}, {"b", "c"}}); }

inline dkbench::Graph path_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_index_edges(n, edges);
}

inline dkbench::Graph cycle_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return from_index_edges(n, edges);
}

inline dkbench::Graph star_n(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return from_index_edges(leaves + 1, edges);
}

inline dkbench::Graph complete_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return from_index_edges(n, edges);
}

inline dkbench::Graph edgeless_n(int n) { return from_index_edges(n, {}); }

inline dkbench::Graph k4_minus_edge() {
  return from_edges({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

// Erdos-Renyi-style random graph on n nodes with edge probability p.
inline dkbench::Graph random_graph(int n, double p, std::uint64_t seed) {
  dkbench::Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.real01() < p) edges.emplace_back(i, j);
    }
  }
  return from_index_edges(n, edges);
}

// Preferential attachment with triad closure: new nodes attach m edges, each
// follow-up edge closes a triangle with probability triad_p. Produces
// power-law-ish degrees with substantial clustering.
inline dkbench::Graph powerlaw_cluster_graph(int n, int m, double triad_p,
                                             std::uint64_t seed) {
  dkbench::Rng rng(seed);
  std::set<std::pair<int, int>> edge_set;
  std::vector<int> targets;  // endpoint multiset; sampling it approximates
                             // degree-proportional choice
  auto add_edge = [&](int a, int b) {
    if (a == b) return false;
    auto e = std::minmax(a, b);
    if (!edge_set.emplace(e.first, e.second).second) return false;
    targets.push_back(a);
    targets.push_back(b);
    return true;
  };
  const int m0 = m + 1;
  for (int i = 1; i < m0; ++i) add_edge(i, i - 1);
  for (int v = m0; v < n; ++v) {
    int attached = 0;
    int last = -1;
    int guard = 0;
    while (attached < m && guard++ < 200) {
      int t;
      if (attached > 0 && last >= 0 && rng.real01() < triad_p) {
        // close a triangle through the previous target when possible
        std::vector<int> nbrs;
        for (const auto& [a, b] : edge_set) {
          if (a == last) nbrs.push_back(b);
          if (b == last) nbrs.push_back(a);
        }
        t = nbrs[rng.index(nbrs.size())];
      } else {
        t = targets[rng.index(targets.size())];
      }
      if (add_edge(v, t)) {
        ++attached;
        last = t;
      }
    }
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  return from_index_edges(n, edges);
}

// All simple graphs on n labeled nodes (n <= 5 is practical).
inline std::vector<dkbench::Graph> all_graphs_on(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::vector<dkbench::Graph> out;
  for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (mask & (1ull << b)) edges.push_back(slots[b]);
    }
    out.push_back(from_index_edges(n, edges));
  }
  return out;
}

}  // namespace oracle
