#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dkbench/graph.hpp"

namespace dkbench {

// Single-metric operations throw UndefinedMetricError when the value does not
// exist for the given graph.
double density(const Graph& g);
double transitivity(const Graph& g);
double avg_clustering(const Graph& g);
double degree_assortativity(const Graph& g);
double avg_path_length(const Graph& g, int n_threads = 1);
double degree_one_pct(const Graph& g);
double avg_degree(const Graph& g);  // 2|E|/|N|, the 0K statistic

double local_clustering(const Graph& g, int u);
std::int64_t triangle_count(const Graph& g);
std::int64_t connected_triple_count(const Graph& g);
std::int64_t triangles_through(const Graph& g, int u);

struct MetricValue {
  std::optional<double> value;
  std::string reason;  // reason code when value is null
};

// One Table-style metrics row; undefined metrics become nulls with a reason
// code instead of aborting the batch.
struct GraphMetricsRow {
  int n_nodes = 0;
  std::int64_t n_edges = 0;
  double avg_degree = 0.0;
  MetricValue density;
  MetricValue transitivity;
  MetricValue avg_clustering;
  MetricValue assortativity;
  MetricValue avg_path_length;
  MetricValue degree1_pct;
};

GraphMetricsRow compute_metrics(const Graph& g, int n_threads = 1);

}  // namespace dkbench
