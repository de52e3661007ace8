#pragma once

#include "dkbench/graph.hpp"

namespace dkbench {

struct DMeasureParams {
  double w_distance = 0.45;    // averaged node-distance distribution term
  double w_nnd = 0.45;         // network node dispersion term
  double w_centrality = 0.10;  // alpha-centrality term (0 disables it)
  int exact_bfs_threshold = 5000;  // above this node count, BFS roots are sampled
  int bfs_sample_roots = 2000;

  void validate() const;
};

struct DissimilarityScore {
  double d = 0.0;
  double term_distance = 0.0;    // unweighted components, each in [0, 1]
  double term_nnd = 0.0;
  double term_centrality = 0.0;
  bool approximate = false;      // BFS roots were sampled
  int bfs_roots_used = 0;
};

// Structural dissimilarity in [0, 1]: Jensen-Shannon distance of the averaged
// node-distance distributions, difference of square-rooted network node
// dispersions, and a Jensen-Shannon term over alpha-centrality distributions
// of the graphs and their complements. Symmetric; 0 for identical inputs.
DissimilarityScore d_measure(const Graph& g1, const Graph& g2,
                             const DMeasureParams& p = {});

}  // namespace dkbench
