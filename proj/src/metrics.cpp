#include "dkbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <queue>
#include <vector>

#include "dkbench/errors.hpp"

namespace dkbench {

namespace {

std::int64_t sorted_intersection_size(const std::vector<int>& a,
                                      const std::vector<int>& b) {
  std::int64_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

// Sum of distances and count of reachable nodes from one BFS root.
void bfs_accumulate(const Graph& g, int root, std::vector<int>& dist,
                    std::int64_t& dist_sum, std::int64_t& reached) {
  std::fill(dist.begin(), dist.end(), -1);
  std::queue<int> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        dist_sum += dist[v];
        ++reached;
        q.push(v);
      }
    }
  }
}

}  // namespace

double density(const Graph& g) {
  const std::int64_t n = g.n_nodes();
  if (n < 2) {
    throw UndefinedMetricError("density needs at least 2 nodes", "too-few-nodes");
  }
  return 2.0 * static_cast<double>(g.n_edges()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::int64_t triangles_through(const Graph& g, int u) {
  // Edges inside N(u); every such edge is seen from both of its endpoints.
  std::int64_t t = 0;
  const auto& nu = g.neighbors(u);
  for (int v : nu) t += sorted_intersection_size(nu, g.neighbors(v));
  return t / 2;
}

std::int64_t triangle_count(const Graph& g) {
  // Each triangle {u,v,w}, u<v<w, is counted at its smallest vertex when
  // intersecting forward neighborhoods.
  std::int64_t total = 0;
  for (int u = 0; u < g.n_nodes(); ++u) {
    const auto& nu = g.neighbors(u);
    for (int v : nu) {
      if (v <= u) continue;
      const auto& nv = g.neighbors(v);
      auto iu = std::upper_bound(nu.begin(), nu.end(), v);
      auto iv = std::upper_bound(nv.begin(), nv.end(), v);
      while (iu != nu.end() && iv != nv.end()) {
        if (*iu < *iv) {
          ++iu;
        } else if (*iv < *iu) {
          ++iv;
        } else {
          ++total;
          ++iu;
          ++iv;
        }
      }
    }
  }
  return total;
}

std::int64_t connected_triple_count(const Graph& g) {
  std::int64_t total = 0;
  for (int u = 0; u < g.n_nodes(); ++u) {
    const std::int64_t d = g.degree(u);
    total += d * (d - 1) / 2;
  }
  return total;
}

double transitivity(const Graph& g) {
  const std::int64_t triples = connected_triple_count(g);
  if (triples == 0) {
    throw UndefinedMetricError("no connected triples", "no-connected-triples");
  }
  return 3.0 * static_cast<double>(triangle_count(g)) /
         static_cast<double>(triples);
}

double local_clustering(const Graph& g, int u) {
  const std::int64_t d = g.degree(u);
  if (d < 2) return 0.0;
  return 2.0 * static_cast<double>(triangles_through(g, u)) /
         (static_cast<double>(d) * static_cast<double>(d - 1));
}

double avg_clustering(const Graph& g) {
  if (g.n_nodes() == 0) {
    throw UndefinedMetricError("empty graph", "empty-graph");
  }
  double sum = 0.0;
  for (int u = 0; u < g.n_nodes(); ++u) sum += local_clustering(g, u);
  return sum / static_cast<double>(g.n_nodes());
}

double degree_assortativity(const Graph& g) {
  // Pearson correlation of endpoint degrees over directed edge instances;
  // every undirected edge contributes both orderings.
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  std::int64_t m = 0;
  for (int u = 0; u < g.n_nodes(); ++u) {
    const double du = g.degree(u);
    for (int v : g.neighbors(u)) {
      const double dv = g.degree(v);
      sx += du;
      sy += dv;
      sxx += du * du;
      syy += dv * dv;
      sxy += du * dv;
      ++m;
    }
  }
  if (m == 0) {
    throw UndefinedMetricError("graph has no edges", "no-edges");
  }
  const double n = static_cast<double>(m);
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cov = sxy - sx * sy / n;
  if (vx <= 0.0 || vy <= 0.0) {
    throw UndefinedMetricError("endpoint degrees have zero variance",
                               "zero-degree-variance");
  }
  return cov / std::sqrt(vx * vy);
}

double avg_path_length(const Graph& g, int n_threads) {
  const int n = g.n_nodes();
  if (n == 0) {
    throw UndefinedMetricError("empty graph", "empty-graph");
  }
  std::int64_t dist_sum = 0;
  std::int64_t reached = 0;
  if (n_threads <= 1 || n < 256) {
    std::vector<int> dist(n);
    for (int u = 0; u < n; ++u) bfs_accumulate(g, u, dist, dist_sum, reached);
  } else {
    const int chunks = std::min(n_threads, n);
    std::vector<std::future<std::pair<std::int64_t, std::int64_t>>> futs;
    futs.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
      futs.push_back(std::async(std::launch::async, [&g, c, chunks, n]() {
        std::vector<int> dist(n);
        std::int64_t ds = 0, rc = 0;
        for (int u = c; u < n; u += chunks) bfs_accumulate(g, u, dist, ds, rc);
        return std::make_pair(ds, rc);
      }));
    }
    for (auto& f : futs) {
      auto [ds, rc] = f.get();
      dist_sum += ds;
      reached += rc;
    }
  }
  // Each unordered pair was visited from both sides.
  if (reached == 0) {
    throw UndefinedMetricError("no reachable node pair", "no-reachable-pair");
  }
  return static_cast<double>(dist_sum) / static_cast<double>(reached);
}

double degree_one_pct(const Graph& g) {
  if (g.n_nodes() == 0) {
    throw UndefinedMetricError("empty graph", "empty-graph");
  }
  std::int64_t ones = 0;
  for (int u = 0; u < g.n_nodes(); ++u) {
    if (g.degree(u) == 1) ++ones;
  }
  return 100.0 * static_cast<double>(ones) / static_cast<double>(g.n_nodes());
}

double avg_degree(const Graph& g) {
  if (g.n_nodes() == 0) {
    throw UndefinedMetricError("empty graph", "empty-graph");
  }
  return 2.0 * static_cast<double>(g.n_edges()) / static_cast<double>(g.n_nodes());
}

GraphMetricsRow compute_metrics(const Graph& g, int n_threads) {
  GraphMetricsRow row;
  row.n_nodes = g.n_nodes();
  row.n_edges = g.n_edges();
  row.avg_degree = g.n_nodes() > 0 ? avg_degree(g) : 0.0;
  auto fill = [](MetricValue& slot, auto&& fn) {
    try {
      slot.value = fn();
    } catch (const UndefinedMetricError& e) {
      slot.value = std::nullopt;
      slot.reason = e.reason;
    }
  };
  fill(row.density, [&] { return density(g); });
  fill(row.transitivity, [&] { return transitivity(g); });
  fill(row.avg_clustering, [&] { return avg_clustering(g); });
  fill(row.assortativity, [&] { return degree_assortativity(g); });
  fill(row.avg_path_length, [&] { return avg_path_length(g, n_threads); });
  fill(row.degree1_pct, [&] { return degree_one_pct(g); });
  return row;
}

}  // namespace dkbench
