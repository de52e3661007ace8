#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "dkbench/errors.hpp"
#include "dkbench/overlap.hpp"
#include "oracles.hpp"

using namespace dkbench;

namespace {

const std::vector<OverlapStrategy> kAll = {
    OverlapStrategy::Random, OverlapStrategy::HighDegree,
    OverlapStrategy::BfsRandom, OverlapStrategy::BfsHighDegree};

std::set<std::string> label_set(const Graph& g) {
  return {g.labels().begin(), g.labels().end()};
}

int components_of(const Graph& g) {
  std::vector<int> comp(g.n_nodes(), -1);
  int count = 0;
  for (int s = 0; s < g.n_nodes(); ++s) {
    if (comp[s] >= 0) continue;
    ++count;
    std::vector<int> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = count;
          stack.push_back(v);
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("split arithmetic at |V|=10, alpha=0.2") {
  const Graph g = oracle::cycle_n(10);
  const OverlapSplit s = split(g, 0.2, OverlapStrategy::Random, 1);
  CHECK(s.v_alpha.size() == 2);
  CHECK(s.g1.n_nodes() == 6);
  CHECK(s.g2.n_nodes() == 6);
  // Jaccard = |V1 cap V2| / |V1 cup V2| = 2/10
  CHECK(0.2 == doctest::Approx(2.0 / 10.0));
}

TEST_CASE("alpha=1 duplicates the graph") {
  const Graph g = oracle::random_graph(12, 0.3, 3);
  const OverlapSplit s = split(g, 1.0, OverlapStrategy::HighDegree, 1);
  CHECK(s.g1.same_edges(g));
  CHECK(s.g2.same_edges(g));
  CHECK(s.v_alpha.size() == static_cast<std::size_t>(g.n_nodes()));
}

TEST_CASE("HD overlap of a star is its hub") {
  const Graph g = oracle::star_n(9);
  const OverlapSplit s = split(g, 0.1, OverlapStrategy::HighDegree, 5);
  REQUIRE(s.v_alpha.size() == 1);
  CHECK(s.v_alpha[0] == g.label(0));  // hub is n0000, the max-degree node
}

TEST_CASE("overlap_order covers the strategies on a 3-path") {
  const Graph g = oracle::path3();  // labels a-b-c, b in the middle
  const int b = *g.index_of("b");

  const auto hd = overlap_order(g, OverlapStrategy::HighDegree, 1, 0);
  CHECK(hd.order == std::vector<int>{b});

  const auto bfs = overlap_order(g, OverlapStrategy::BfsHighDegree, 3, 0);
  REQUIRE(bfs.order.size() == 3);
  CHECK(bfs.order[0] == b);
  // neighbor order is ascending label: a before c
  CHECK(bfs.order[1] == *g.index_of("a"));
  CHECK(bfs.order[2] == *g.index_of("c"));
  CHECK(bfs.restarts == 0);
}

TEST_CASE("full-size order is a permutation for every strategy") {
  const Graph g = oracle::random_graph(24, 0.1, 8);
  for (auto strat : kAll) {
    const auto res = overlap_order(g, strat, g.n_nodes(), 31);
    std::set<int> seen(res.order.begin(), res.order.end());
    CHECK(static_cast<int>(seen.size()) == g.n_nodes());
  }
}

TEST_CASE("order size is validated") {
  const Graph g = oracle::triangle();
  CHECK_THROWS_AS(overlap_order(g, OverlapStrategy::Random, 0, 1), ParamError);
  CHECK_THROWS_AS(overlap_order(g, OverlapStrategy::Random, 4, 1), ParamError);
}

TEST_CASE("split set identities hold across strategies, alphas and seeds") {
  const std::vector<Graph> graphs = {
      oracle::random_graph(20, 0.2, 11), oracle::powerlaw_cluster_graph(40, 2, 0.5, 12),
      oracle::cycle_n(15), oracle::star_n(19), oracle::random_graph(33, 0.1, 13)};
  for (const auto& g : graphs) {
    const auto all_labels = label_set(g);
    for (auto strat : kAll) {
      for (double alpha : {0.1, 0.2, 0.5}) {
        if (std::lround(alpha * g.n_nodes()) < 1) continue;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          const OverlapSplit s = split(g, alpha, strat, seed);
          const auto l1 = label_set(s.g1);
          const auto l2 = label_set(s.g2);

          // V1 cup V2 = V
          std::set<std::string> uni;
          std::set_union(l1.begin(), l1.end(), l2.begin(), l2.end(),
                         std::inserter(uni, uni.begin()));
          CHECK(uni == all_labels);

          // V1 cap V2 = v_alpha
          std::set<std::string> inter;
          std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(),
                                std::inserter(inter, inter.begin()));
          CHECK(inter ==
                std::set<std::string>(s.v_alpha.begin(), s.v_alpha.end()));
          CHECK_FALSE(s.v_alpha.empty());

          // halves differ by at most one node
          const int n1 = s.g1.n_nodes() - static_cast<int>(s.v_alpha.size());
          const int n2 = s.g2.n_nodes() - static_cast<int>(s.v_alpha.size());
          CHECK(std::abs(n1 - n2) <= 1);

          // Jaccard within rounding of alpha
          const double jacc = static_cast<double>(s.v_alpha.size()) /
                              static_cast<double>(g.n_nodes());
          CHECK(std::abs(jacc - alpha) <= 0.5 / g.n_nodes() + 1e-12);

          // induced-subgraph property against a brute-force rebuild
          std::vector<int> idx1;
          for (const auto& lab : l1) idx1.push_back(*g.index_of(lab));
          CHECK(s.g1.same_edges(g.induced(idx1)));
        }
      }
    }
  }
}

TEST_CASE("BFS overlap components are bounded by restarts") {
  // triangle plus two isolated nodes: BFS must restart for the isolates
  const Graph g = oracle::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}},
                                     {"x", "y"});
  const auto res = overlap_order(g, OverlapStrategy::BfsHighDegree, 5, 2);
  CHECK(res.restarts == 2);
  const OverlapSplit s = split(g, 1.0, OverlapStrategy::BfsHighDegree, 2);
  const Graph induced = s.g1;
  CHECK(components_of(induced) <= res.restarts + 1);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph h = oracle::random_graph(30, 0.05, 600 + seed);
    const int size = 12;
    const auto ord = overlap_order(h, OverlapStrategy::BfsRandom, size, seed);
    const Graph sub = h.induced(ord.order);
    CHECK(components_of(sub) <= ord.restarts + 1);
  }
}

TEST_CASE("split is deterministic given the seed") {
  const Graph g = oracle::random_graph(26, 0.15, 77);
  const OverlapSplit a = split(g, 0.25, OverlapStrategy::BfsRandom, 9);
  const OverlapSplit b = split(g, 0.25, OverlapStrategy::BfsRandom, 9);
  CHECK(a.g1.same_edges(b.g1));
  CHECK(a.g2.same_edges(b.g2));
  CHECK(a.v_alpha == b.v_alpha);
}

TEST_CASE("write_split emits two edge lists and a manifest") {
  const char* dir = "/tmp/dkbench_split_test";
  REQUIRE(std::system((std::string("rm -rf ") + dir + " && mkdir -p " + dir)
                          .c_str()) == 0);
  const Graph g = oracle::random_graph(20, 0.2, 44);
  const OverlapSplit s = split(g, 0.2, OverlapStrategy::BfsHighDegree, 3);
  write_split(s, dir, "toy");

  const Graph g1 = load_edge_list_file(std::string(dir) + "/toy.g1.edges");
  CHECK(g1.n_edges() == s.g1.n_edges());

  std::ifstream manifest(std::string(dir) + "/toy.split.json");
  REQUIRE(manifest.good());
  std::stringstream ss;
  ss << manifest.rdbuf();
  CHECK(ss.str().find("\"strategy\": \"BFS-HD\"") != std::string::npos);
  CHECK(ss.str().find("\"v_alpha\"") != std::string::npos);

  CHECK_THROWS_AS(write_split(s, "/tmp/dkbench_split_missing_dir", "toy"),
                  IoError);
}

TEST_CASE("split parameter validation") {
  const Graph g = oracle::triangle();
  CHECK_THROWS_AS(split(g, 0.0, OverlapStrategy::Random, 1), ParamError);
  CHECK_THROWS_AS(split(g, 1.5, OverlapStrategy::Random, 1), ParamError);
  CHECK_THROWS_AS(split(oracle::from_edges({{"a", "b"}}), 0.5,
                        OverlapStrategy::Random, 1),
                  ParamError);
  CHECK_THROWS_AS(split(oracle::cycle_n(10), 0.01, OverlapStrategy::Random, 1),
                  ParamError);
}
