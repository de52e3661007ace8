#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkbench/attack.hpp"
#include "dkbench/dissimilarity.hpp"
#include "dkbench/dk_generate.hpp"
#include "dkbench/metrics.hpp"
#include "dkbench/overlap.hpp"

namespace dkbench {

const char* dkbench_version();

struct ExperimentConfig {
  std::string dataset_path;
  std::string dataset_name;  // defaults to the stem of dataset_path
  double alpha = 0.2;
  std::vector<OverlapStrategy> strategies = {
      OverlapStrategy::Random, OverlapStrategy::HighDegree,
      OverlapStrategy::BfsRandom, OverlapStrategy::BfsHighDegree};
  std::vector<DkLevel> levels = {DkLevel::GS, DkLevel::OneK, DkLevel::TwoK,
                                 DkLevel::TwoFiveK};
  int m = 4;  // dK instances per subgraph
  int ell = 10;
  int sample_size = 60;
  double holdout_frac = 0.3;
  int bin_size = 50;
  int num_bins = 21;
  FeatureLayout layout = FeatureLayout::ConcatAbsDiff;
  int n_trees = 100;
  int smote_k = 5;
  std::uint64_t master_seed = 1;
  std::optional<std::int64_t> pair_cap;
  double swap_budget_factor = 10.0;
  double max_attempts_factor = 200.0;
  std::int64_t jdd_tolerance = 0;
  double cspec_tolerance = 0.01;
  bool compute_dissimilarity = true;
  int threads = 1;

  void validate() const;
};

// Flat config file: `key = value` lines, '#' comments, UTF-8. Every key can
// also be supplied as a CLI flag of the same name.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value, std::size_t line_no);

struct EvalRow {
  std::string instance_id;
  int sample_id = 0;
  EvalResult eval;
};

struct InstanceReport {
  std::string instance_id;  // "G1.2" = third instance generated from G1
  GenStats gen_stats;
  PairCounts pairs;
  GraphMetricsRow san_metrics;
  GraphMetricsRow aux_metrics;
  std::optional<DissimilarityScore> dissimilarity;  // vs the source subgraph
  std::string error;  // nonempty when this instance failed
};

struct CellReport {
  DkLevel level = DkLevel::GS;
  OverlapStrategy strategy = OverlapStrategy::Random;
  std::vector<InstanceReport> instances;
  std::vector<EvalRow> evals;
  std::string error;  // nonempty when the whole cell failed (e.g. bad split)
};

struct ExperimentReport {
  std::string version;
  std::string created_at;  // informational; excluded from determinism checks
  std::string dataset;
  ExperimentConfig config;
  std::vector<CellReport> cells;
};

// Full pipeline per (level, strategy): split the source, anonymize each side
// (m dK instances, or the subgraphs themselves for GS), split every instance
// again with the same parameters into (G_aux, G_san), stream labeled pairs,
// build ell balanced samples, train one forest per sample and evaluate.
// Instance failures are recorded in the report; siblings keep running.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::string report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const std::string& text);
std::string f1_csv(const ExperimentReport& r);

// Writes report.json and f1.csv into out_dir.
void emit_report(const ExperimentReport& r, const std::string& out_dir);

// 0 = clean, 2 = every configuration failed, 3 = partial failures.
int report_exit_code(const ExperimentReport& r);

}  // namespace dkbench
