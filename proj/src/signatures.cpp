#include "dkbench/signatures.hpp"

#include <cmath>
#include <cstdlib>

#include "dkbench/errors.hpp"

namespace dkbench {

std::map<int, int> ndd(const Graph& g, int u, int q) {
  if (u < 0 || u >= g.n_nodes()) throw ParamError("unknown node index");
  if (q != 1 && q != 2) throw ParamError("ndd supports hop distances 1 and 2");
  std::map<int, int> counts;
  if (q == 1) {
    for (int v : g.neighbors(u)) ++counts[g.degree(v)];
    return counts;
  }
  std::vector<char> seen(g.n_nodes(), 0);
  seen[u] = 1;
  for (int v : g.neighbors(u)) seen[v] = 1;
  for (int v : g.neighbors(u)) {
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++counts[g.degree(w)];
      }
    }
  }
  return counts;
}

std::vector<int> bin_ndd(const std::map<int, int>& raw, int b, int B) {
  if (b < 1 || B < 1) throw ParamError("bin size and bin count must be >= 1");
  std::vector<int> bins(B, 0);
  for (const auto& [degree, count] : raw) {
    int idx = degree <= 0 ? 0 : (degree - 1) / b;
    if (idx >= B) idx = B - 1;
    bins[idx] += count;
  }
  return bins;
}

NodeSignature node_signature(const Graph& g, int u, int b, int B) {
  NodeSignature sig;
  sig.bin_size = b;
  sig.num_bins = B;
  sig.vec = bin_ndd(ndd(g, u, 1), b, B);
  const auto hop2 = bin_ndd(ndd(g, u, 2), b, B);
  sig.vec.insert(sig.vec.end(), hop2.begin(), hop2.end());
  return sig;
}

std::vector<NodeSignature> signature_matrix(const Graph& g, int b, int B) {
  std::vector<NodeSignature> sigs;
  sigs.reserve(g.n_nodes());
  for (int u = 0; u < g.n_nodes(); ++u) sigs.push_back(node_signature(g, u, b, B));
  return sigs;
}

std::string to_string(FeatureLayout layout) {
  switch (layout) {
    case FeatureLayout::ConcatAbsDiff: return "concat-absdiff";
    case FeatureLayout::ConcatOnly: return "concat";
    case FeatureLayout::AbsDiffOnly: return "absdiff";
  }
  return "?";
}

FeatureLayout feature_layout_from_string(std::string_view s) {
  if (s == "concat-absdiff") return FeatureLayout::ConcatAbsDiff;
  if (s == "concat") return FeatureLayout::ConcatOnly;
  if (s == "absdiff") return FeatureLayout::AbsDiffOnly;
  throw ParamError("unknown feature layout: " + std::string(s));
}

std::vector<double> pair_features(const NodeSignature& sig_san,
                                  const NodeSignature& sig_aux,
                                  FeatureLayout layout) {
  if (sig_san.bin_size != sig_aux.bin_size ||
      sig_san.num_bins != sig_aux.num_bins ||
      sig_san.vec.size() != sig_aux.vec.size()) {
    throw ParamError("pair features need identically binned signatures");
  }
  const std::size_t w = sig_san.vec.size();
  std::vector<double> out;
  if (layout == FeatureLayout::ConcatAbsDiff) {
    out.reserve(3 * w);
  } else if (layout == FeatureLayout::ConcatOnly) {
    out.reserve(2 * w);
  } else {
    out.reserve(w);
  }
  if (layout != FeatureLayout::AbsDiffOnly) {
    for (int v : sig_san.vec) out.push_back(v);
    for (int v : sig_aux.vec) out.push_back(v);
  }
  if (layout != FeatureLayout::ConcatOnly) {
    for (std::size_t i = 0; i < w; ++i) {
      out.push_back(std::abs(sig_san.vec[i] - sig_aux.vec[i]));
    }
  }
  return out;
}

}  // namespace dkbench
