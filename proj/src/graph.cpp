#include "dkbench/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dkbench/errors.hpp"

namespace dkbench {

Graph Graph::from_edges(std::vector<std::string> labels,
                        const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  const int n = static_cast<int>(labels.size());
  for (int i = 1; i < n; ++i) {
    if (!(labels[i - 1] < labels[i])) {
      throw ParamError("node labels must be sorted and unique");
    }
  }
  g.labels_ = std::move(labels);
  g.index_.reserve(g.labels_.size());
  for (int i = 0; i < n; ++i) g.index_.emplace(g.labels_[i], i);
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ParamError("edge endpoint out of range");
    }
    if (u == v) continue;
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    g.n_edges_ += static_cast<std::int64_t>(nb.size());
  }
  g.n_edges_ /= 2;
  return g;
}

Graph Graph::from_label_edges(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& isolated) {
  std::vector<std::string> labels;
  labels.reserve(edges.size() * 2 + isolated.size());
  for (const auto& [a, b] : edges) {
    labels.push_back(a);
    labels.push_back(b);
  }
  labels.insert(labels.end(), isolated.begin(), isolated.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::unordered_map<std::string, int> idx;
  idx.reserve(labels.size());
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) idx.emplace(labels[i], i);

  std::vector<std::pair<int, int>> iedges;
  iedges.reserve(edges.size());
  for (const auto& [a, b] : edges) iedges.emplace_back(idx.at(a), idx.at(b));
  return from_edges(std::move(labels), iedges);
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<int> Graph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(n_edges_));
  for (int u = 0; u < n_nodes(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<int>& nodes) const {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  std::vector<int> remap(n_nodes(), -1);
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    labels.push_back(labels_[sorted[i]]);
    remap[sorted[i]] = i;
  }
  std::vector<std::pair<int, int>> edges;
  for (int u : sorted) {
    for (int v : adj_[u]) {
      if (u < v && remap[v] >= 0) edges.emplace_back(remap[u], remap[v]);
    }
  }
  return from_edges(std::move(labels), edges);
}

bool Graph::same_edges(const Graph& other) const {
  return labels_ == other.labels_ && adj_ == other.adj_;
}

Graph load_edge_list(std::istream& in, LoadSummary* summary) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  std::size_t line_no = 0;
  std::size_t self_loops = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra)) {
      throw ParseError("expected two whitespace-separated node tokens", line_no);
    }
    if (a == b) {
      ++self_loops;
      // keep the node even when its only mention is a self-loop
      raw.emplace_back(a, a);
      continue;
    }
    raw.emplace_back(std::move(a), std::move(b));
  }

  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> isolated;
  edges.reserve(raw.size());
  for (auto& e : raw) {
    if (e.first == e.second) {
      isolated.push_back(e.first);
    } else {
      edges.push_back(std::move(e));
    }
  }
  Graph g = Graph::from_label_edges(edges, isolated);

  if (summary) {
    summary->edge_lines = raw.size();
    summary->self_loops = self_loops;
    summary->duplicate_edges = edges.size() - static_cast<std::size_t>(g.n_edges());
  }
  return g;
}

Graph load_edge_list_file(const std::string& path, LoadSummary* summary) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return load_edge_list(in, summary);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edge_list()) {
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write edge list: " + path);
  save_edge_list(g, out);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace dkbench
