#include "dkbench/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>

#include <json.hpp>

#include "dkbench/errors.hpp"
#include "dkbench/rng.hpp"

namespace dkbench {

std::string to_string(OverlapStrategy s) {
  switch (s) {
    case OverlapStrategy::Random: return "R";
    case OverlapStrategy::HighDegree: return "HD";
    case OverlapStrategy::BfsRandom: return "BFS-R";
    case OverlapStrategy::BfsHighDegree: return "BFS-HD";
  }
  return "?";
}

OverlapStrategy strategy_from_string(std::string_view s) {
  if (s == "R") return OverlapStrategy::Random;
  if (s == "HD") return OverlapStrategy::HighDegree;
  if (s == "BFS-R") return OverlapStrategy::BfsRandom;
  if (s == "BFS-HD") return OverlapStrategy::BfsHighDegree;
  throw ParamError("unknown overlap strategy: " + std::string(s));
}

namespace {

// Indices sorted by descending degree, ties by ascending index (node indices
// are in label order, so this is the lexicographic tie-break).
std::vector<int> degree_ranking(const Graph& g) {
  std::vector<int> nodes(g.n_nodes());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::stable_sort(nodes.begin(), nodes.end(), [&g](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  return nodes;
}

OrderResult bfs_order(const Graph& g, int size, bool high_degree_roots,
                      std::uint64_t seed) {
  const int n = g.n_nodes();
  OrderResult res;
  res.order.reserve(size);
  std::vector<char> visited(n, 0);
  Rng rng(seed);

  std::vector<int> root_rank;  // consumed front to back for HD roots
  std::size_t next_root = 0;
  if (high_degree_roots) {
    root_rank = degree_ranking(g);
  }

  auto pick_root = [&]() -> int {
    if (high_degree_roots) {
      while (next_root < root_rank.size() && visited[root_rank[next_root]]) {
        ++next_root;
      }
      return root_rank[next_root];
    }
    // uniform choice among unvisited nodes
    std::vector<int> pool;
    pool.reserve(n);
    for (int u = 0; u < n; ++u) {
      if (!visited[u]) pool.push_back(u);
    }
    return pool[rng.index(pool.size())];
  };

  bool first = true;
  while (static_cast<int>(res.order.size()) < size) {
    if (!first) ++res.restarts;
    first = false;
    std::queue<int> q;
    const int root = pick_root();
    visited[root] = 1;
    res.order.push_back(root);
    q.push(root);
    while (!q.empty() && static_cast<int>(res.order.size()) < size) {
      const int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {  // ascending label order
        if (!visited[v]) {
          visited[v] = 1;
          res.order.push_back(v);
          if (static_cast<int>(res.order.size()) >= size) return res;
          q.push(v);
        }
      }
    }
  }
  return res;
}

}  // namespace

OrderResult overlap_order(const Graph& g, OverlapStrategy s, int size,
                          std::uint64_t seed) {
  if (size < 1 || size > g.n_nodes()) {
    throw ParamError("overlap size out of range");
  }
  OrderResult res;
  switch (s) {
    case OverlapStrategy::Random: {
      std::vector<int> nodes(g.n_nodes());
      std::iota(nodes.begin(), nodes.end(), 0);
      Rng rng(seed);
      rng.shuffle(nodes);
      nodes.resize(size);
      res.order = std::move(nodes);
      return res;
    }
    case OverlapStrategy::HighDegree: {
      auto ranked = degree_ranking(g);
      ranked.resize(size);
      res.order = std::move(ranked);
      return res;
    }
    case OverlapStrategy::BfsRandom:
      return bfs_order(g, size, false, seed);
    case OverlapStrategy::BfsHighDegree:
      return bfs_order(g, size, true, seed);
  }
  throw ParamError("unknown overlap strategy");
}

OverlapSplit split(const Graph& g, double alpha, OverlapStrategy s,
                   std::uint64_t seed) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw ParamError("alpha must be in (0, 1]");
  }
  const int n = g.n_nodes();
  if (n < 3) throw ParamError("graph too small to split");
  const int k = static_cast<int>(std::lround(alpha * n));
  if (k < 1) throw ParamError("alpha too small: overlap would be empty");

  auto ord = overlap_order(g, s, k, derive_seed(seed, "overlap-order"));
  std::vector<char> in_overlap(n, 0);
  for (int u : ord.order) in_overlap[u] = 1;

  std::vector<int> rest;
  rest.reserve(n - k);
  for (int u = 0; u < n; ++u) {
    if (!in_overlap[u]) rest.push_back(u);
  }
  Rng rng(derive_seed(seed, "halves"));
  rng.shuffle(rest);
  const std::size_t half = (rest.size() + 1) / 2;

  std::vector<int> nodes1(ord.order);
  std::vector<int> nodes2(ord.order);
  nodes1.insert(nodes1.end(), rest.begin(), rest.begin() + half);
  nodes2.insert(nodes2.end(), rest.begin() + half, rest.end());

  OverlapSplit out;
  out.g1 = g.induced(nodes1);
  out.g2 = g.induced(nodes2);
  out.v_alpha.reserve(ord.order.size());
  std::sort(ord.order.begin(), ord.order.end());
  for (int u : ord.order) out.v_alpha.push_back(g.label(u));
  out.strategy = s;
  out.alpha = alpha;
  out.restarts = ord.restarts;
  return out;
}

void write_split(const OverlapSplit& s, const std::string& dir,
                 const std::string& base) {
  const std::string prefix = dir + "/" + base;
  save_edge_list_file(s.g1, prefix + ".g1.edges");
  save_edge_list_file(s.g2, prefix + ".g2.edges");
  nlohmann::json j;
  j["strategy"] = to_string(s.strategy);
  j["alpha"] = s.alpha;
  j["bfs_restarts"] = s.restarts;
  j["v_alpha"] = s.v_alpha;
  j["g1_nodes"] = s.g1.n_nodes();
  j["g2_nodes"] = s.g2.n_nodes();
  std::ofstream out(prefix + ".split.json");
  if (!out) throw IoError("cannot write split manifest: " + prefix + ".split.json");
  out << j.dump(2) << '\n';
}

}  // namespace dkbench
