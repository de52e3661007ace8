#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dkbench {

// Undirected simple graph. Nodes carry opaque string labels and are addressed
// internally by dense indices in lexicographic label order, so index
// comparisons agree with label comparisons wherever ordering breaks ties.
// Immutable after construction; concurrent reads are safe.
class Graph {
 public:
  Graph() = default;

  // `labels` must be sorted ascending and unique; `edges` are index pairs.
  // Self-loops and duplicate edges are dropped silently.
  static Graph from_edges(std::vector<std::string> labels,
                          const std::vector<std::pair<int, int>>& edges);

  static Graph from_label_edges(
      const std::vector<std::pair<std::string, std::string>>& edges,
      const std::vector<std::string>& isolated = {});

  int n_nodes() const { return static_cast<int>(adj_.size()); }
  std::int64_t n_edges() const { return n_edges_; }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }

  // Neighbor indices in ascending order.
  const std::vector<int>& neighbors(int u) const { return adj_[u]; }

  bool has_edge(int u, int v) const;

  const std::string& label(int u) const { return labels_[u]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(const std::string& label) const;

  // Edges as (u, v) with u < v, in ascending order.
  std::vector<std::pair<int, int>> edge_list() const;

  // Induced subgraph on the given node indices; labels are preserved.
  Graph induced(const std::vector<int>& nodes) const;

  bool same_edges(const Graph& other) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> adj_;
  std::int64_t n_edges_ = 0;
};

struct LoadSummary {
  std::size_t edge_lines = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

// Edge-list format: one edge per line as two whitespace-separated node
// tokens; lines starting with '#' and blank lines are ignored. Throws
// ParseError with the offending line number on anything else.
Graph load_edge_list(std::istream& in, LoadSummary* summary = nullptr);
Graph load_edge_list_file(const std::string& path, LoadSummary* summary = nullptr);

void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace dkbench
