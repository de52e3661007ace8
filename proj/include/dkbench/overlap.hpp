#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dkbench/graph.hpp"

namespace dkbench {

enum class OverlapStrategy { Random, HighDegree, BfsRandom, BfsHighDegree };

std::string to_string(OverlapStrategy s);
OverlapStrategy strategy_from_string(std::string_view s);  // R, HD, BFS-R, BFS-HD

struct OrderResult {
  std::vector<int> order;  // node indices of g
  int restarts = 0;        // BFS component restarts (0 for R and HD)
};

// Node ordering a strategy induces, truncated to `size`:
//   R       uniform sample without replacement
//   HD      descending degree, ties by ascending label
//   BFS-R   BFS visitation order from a random root
//   BFS-HD  BFS visitation order from the highest-degree node
// BFS neighbor order is ascending label; exhausted components restart from a
// fresh random (resp. next-highest-degree) unvisited node.
OrderResult overlap_order(const Graph& g, OverlapStrategy s, int size,
                          std::uint64_t seed);

struct OverlapSplit {
  Graph g1;
  Graph g2;
  std::vector<std::string> v_alpha;  // shared node labels
  OverlapStrategy strategy = OverlapStrategy::Random;
  double alpha = 0.0;
  int restarts = 0;
};

// Splits g into two induced subgraphs sharing round(alpha * |V|) nodes chosen
// by the strategy; the remaining nodes are partitioned into random halves
// whose sizes differ by at most one.
OverlapSplit split(const Graph& g, double alpha, OverlapStrategy s,
                   std::uint64_t seed);

// Writes <base>.g1.edges, <base>.g2.edges and <base>.split.json into dir.
void write_split(const OverlapSplit& s, const std::string& dir,
                 const std::string& base);

}  // namespace dkbench
