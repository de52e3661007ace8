#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dkbench/graph.hpp"

namespace dkbench {

// Degrees of the nodes at shortest-path distance exactly q (1 or 2) from u.
std::map<int, int> ndd(const Graph& g, int u, int q);

// Bin i (0-based) covers degrees i*b+1 .. (i+1)*b; degrees beyond B*b fold
// into the last bin.
std::vector<int> bin_ndd(const std::map<int, int>& raw, int b, int B);

struct NodeSignature {
  std::vector<int> vec;  // binned 1-hop NDD followed by binned 2-hop NDD
  int bin_size = 50;
  int num_bins = 21;
};

NodeSignature node_signature(const Graph& g, int u, int b = 50, int B = 21);

// One signature per node, indexed by node id.
std::vector<NodeSignature> signature_matrix(const Graph& g, int b = 50,
                                            int B = 21);

enum class FeatureLayout {
  ConcatAbsDiff,  // sig_san | sig_aux | elementwise |sig_san - sig_aux|
  ConcatOnly,     // sig_san | sig_aux
  AbsDiffOnly,    // elementwise |sig_san - sig_aux|
};

std::string to_string(FeatureLayout layout);
FeatureLayout feature_layout_from_string(std::string_view s);

// Feature vector of a candidate pair; the sanitized-graph node always comes
// first. Both signatures must share (bin_size, num_bins).
std::vector<double> pair_features(const NodeSignature& sig_san,
                                  const NodeSignature& sig_aux,
                                  FeatureLayout layout = FeatureLayout::ConcatAbsDiff);

}  // namespace dkbench
