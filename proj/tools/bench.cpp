#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dkbench/dk_generate.hpp"
#include "dkbench/errors.hpp"
#include "dkbench/experiment.hpp"
#include "dkbench/graph.hpp"
#include "dkbench/metrics.hpp"

namespace {

using dkbench::ExperimentConfig;

const std::vector<std::string> kConfigKeys = {
    "dataset_path",       "dataset_name",
    "alpha",              "strategies",
    "dk_levels",          "m",
    "ell",                "sample_size",
    "holdout_frac",       "bin_size",
    "num_bins",           "feature_layout",
    "n_trees",            "smote_k",
    "master_seed",        "pair_cap",
    "swap_budget_factor", "max_attempts_factor",
    "jdd_tolerance",      "cspec_tolerance",
    "compute_dissimilarity", "threads",
};

nlohmann::json metric_json(const dkbench::MetricValue& m) {
  nlohmann::json j;
  if (m.value) {
    j["value"] = *m.value;
  } else {
    j["value"] = nullptr;
    j["reason"] = m.reason;
  }
  return j;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::map<std::string, std::string>& overrides) {
  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = dkbench::parse_config_file(config_path);
    for (const auto& [key, value] : overrides) {
      dkbench::apply_config_entry(cfg, key, value, 0);
    }
    cfg.validate();
  } catch (const dkbench::Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }

  dkbench::ExperimentReport report;
  try {
    report = dkbench::run_experiment(cfg);
  } catch (const dkbench::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  try {
    dkbench::emit_report(report, out_dir);
  } catch (const dkbench::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::printf("wrote %s/report.json and %s/f1.csv\n", out_dir.c_str(),
              out_dir.c_str());
  return dkbench::report_exit_code(report);
}

int cmd_metrics(const std::string& graph_path, int threads) {
  try {
    dkbench::LoadSummary summary;
    const dkbench::Graph g = dkbench::load_edge_list_file(graph_path, &summary);
    const dkbench::GraphMetricsRow row = dkbench::compute_metrics(g, threads);
    nlohmann::json j;
    j["path"] = graph_path;
    j["n_nodes"] = row.n_nodes;
    j["n_edges"] = row.n_edges;
    j["avg_degree"] = row.avg_degree;
    j["density"] = metric_json(row.density);
    j["transitivity"] = metric_json(row.transitivity);
    j["avg_clustering"] = metric_json(row.avg_clustering);
    j["assortativity"] = metric_json(row.assortativity);
    j["avg_path_length"] = metric_json(row.avg_path_length);
    j["degree1_pct"] = metric_json(row.degree1_pct);
    j["load"] = {{"duplicate_edges", summary.duplicate_edges},
                 {"self_loops", summary.self_loops}};
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
  } catch (const dkbench::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int cmd_generate(const std::string& graph_path, const std::string& level_str,
                 std::uint64_t seed, const std::string& out_dir,
                 const dkbench::GenParams& base) {
  try {
    const dkbench::DkLevel level = dkbench::dk_level_from_string(level_str);
    if (level == dkbench::DkLevel::GS) {
      throw dkbench::ParamError("generate expects a dK level: 1K, 2K or 2.5K");
    }
    const dkbench::Graph g = dkbench::load_edge_list_file(graph_path);
    dkbench::GenParams p = base;
    p.level = level;
    p.rng_seed = seed;
    const dkbench::GenResult res = dkbench::generate(g, p);

    std::string stem = graph_path;
    const auto slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);

    const std::string base_name = out_dir + "/" + stem + "." +
                                  dkbench::to_string(level) + "." +
                                  std::to_string(seed);
    dkbench::save_edge_list_file(res.graph, base_name + ".edges");

    nlohmann::json j;
    j["source"] = graph_path;
    j["level"] = dkbench::to_string(level);
    j["rng_seed"] = seed;
    j["swap_budget_factor"] = p.swap_budget_factor;
    j["max_attempts_factor"] = p.max_attempts_factor;
    j["jdd_tolerance"] = p.jdd_tolerance;
    j["cspec_tolerance"] = p.cspec_tolerance;
    j["achieved"] = {{"jdd_distance", res.stats.jdd_distance},
                     {"cspec_distance", res.stats.cspec_distance}};
    j["accepted_swaps"] = res.stats.accepted_swaps;
    j["attempts"] = res.stats.attempts;
    j["swap_budget_met"] = res.stats.swap_budget_met;
    j["used_fallback"] = res.stats.used_fallback;
    std::ofstream side(base_name + ".json");
    if (!side) throw dkbench::IoError("cannot write " + base_name + ".json");
    side << j.dump(2) << '\n';

    std::printf("wrote %s.edges\n", base_name.c_str());
    return 0;
  } catch (const dkbench::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dK-random graph anonymization benchmark"};
  app.set_version_flag("--version", dkbench::dkbench_version());
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the full benchmark pipeline");
  std::string config_path;
  std::string out_dir = ".";
  run->add_option("--config", config_path, "Config file (key = value lines)");
  run->add_option("--out", out_dir, "Output directory for report.json / f1.csv");
  std::map<std::string, std::string> override_values;
  std::map<std::string, CLI::Option*> override_opts;
  for (const auto& key : kConfigKeys) {
    override_opts[key] = run->add_option("--" + key, override_values[key],
                                         "Override config key " + key);
  }
  std::string seed_alias, levels_alias;
  auto* seed_opt = run->add_option("--seed", seed_alias, "Alias for --master_seed");
  auto* levels_opt =
      run->add_option("--levels", levels_alias, "Alias for --dk_levels");

  // metrics
  auto* met = app.add_subcommand("metrics", "Print metrics of a graph as JSON");
  std::string metrics_graph;
  int metrics_threads = 1;
  met->add_option("--graph", metrics_graph, "Edge-list file")->required();
  met->add_option("--threads", metrics_threads, "BFS worker threads");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate one dK-random instance");
  std::string gen_graph, gen_level, gen_out = ".";
  std::uint64_t gen_seed = 0;
  dkbench::GenParams gen_params;
  gen->add_option("--graph", gen_graph, "Edge-list file")->required();
  gen->add_option("--level", gen_level, "1K, 2K or 2.5K")->required();
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--swap_budget_factor", gen_params.swap_budget_factor);
  gen->add_option("--max_attempts_factor", gen_params.max_attempts_factor);
  gen->add_option("--jdd_tolerance", gen_params.jdd_tolerance);
  gen->add_option("--cspec_tolerance", gen_params.cspec_tolerance);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::map<std::string, std::string> overrides;
    for (const auto& [key, opt] : override_opts) {
      if (opt->count() > 0) overrides[key] = override_values[key];
    }
    if (seed_opt->count() > 0) overrides["master_seed"] = seed_alias;
    if (levels_opt->count() > 0) overrides["dk_levels"] = levels_alias;
    return cmd_run(config_path, out_dir, overrides);
  }
  if (met->parsed()) {
    return cmd_metrics(metrics_graph, metrics_threads);
  }
  if (gen->parsed()) {
    return cmd_generate(gen_graph, gen_level, gen_seed, gen_out, gen_params);
  }
  return 0;
}
