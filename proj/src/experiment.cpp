#include "dkbench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dkbench/errors.hpp"
#include "dkbench/rng.hpp"

namespace dkbench {

const char* dkbench_version() { return "0.1.0"; }

namespace {

std::string path_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string now_iso8601() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T, typename Parse>
T parse_or_throw(const std::string& value, std::size_t line_no, Parse parse) {
  try {
    return parse(value);
  } catch (const ParamError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("invalid value: " + value, line_no);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) throw ParamError("alpha must be in (0, 1]");
  if (m < 1) throw ParamError("m must be >= 1");
  if (ell < 1) throw ParamError("ell must be >= 1");
  if (sample_size < 4) throw ParamError("sample_size must be >= 4");
  if (!(holdout_frac > 0.0) || !(holdout_frac < 1.0)) {
    throw ParamError("holdout_frac must be in (0, 1)");
  }
  if (bin_size < 1 || num_bins < 1) throw ParamError("bins must be >= 1");
  if (n_trees < 1) throw ParamError("n_trees must be >= 1");
  if (smote_k < 1) throw ParamError("smote_k must be >= 1");
  if (threads < 1) throw ParamError("threads must be >= 1");
  if (pair_cap && *pair_cap < 1) throw ParamError("pair_cap must be >= 1");
  if (swap_budget_factor <= 0 || max_attempts_factor <= 0) {
    throw ParamError("swap factors must be positive");
  }
  if (jdd_tolerance < 0 || cspec_tolerance < 0) {
    throw ParamError("tolerances must be >= 0");
  }
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value, std::size_t line_no) {
  auto to_int = [&](const std::string& v) {
    return parse_or_throw<int>(v, line_no,
                               [](const std::string& s) { return std::stoi(s); });
  };
  auto to_i64 = [&](const std::string& v) {
    return parse_or_throw<std::int64_t>(
        v, line_no, [](const std::string& s) { return std::stoll(s); });
  };
  auto to_u64 = [&](const std::string& v) {
    return parse_or_throw<std::uint64_t>(
        v, line_no, [](const std::string& s) { return std::stoull(s); });
  };
  auto to_double = [&](const std::string& v) {
    return parse_or_throw<double>(
        v, line_no, [](const std::string& s) { return std::stod(s); });
  };
  auto to_bool = [&](const std::string& v) -> bool {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("expected true/false: " + v, line_no);
  };

  if (key == "dataset_path") {
    cfg.dataset_path = value;
  } else if (key == "dataset_name") {
    cfg.dataset_name = value;
  } else if (key == "alpha") {
    cfg.alpha = to_double(value);
  } else if (key == "strategies") {
    cfg.strategies.clear();
    for (const auto& s : split_csv(value)) {
      cfg.strategies.push_back(parse_or_throw<OverlapStrategy>(
          s, line_no, [](const std::string& v) { return strategy_from_string(v); }));
    }
  } else if (key == "dk_levels") {
    cfg.levels.clear();
    for (const auto& s : split_csv(value)) {
      cfg.levels.push_back(parse_or_throw<DkLevel>(
          s, line_no, [](const std::string& v) { return dk_level_from_string(v); }));
    }
  } else if (key == "m") {
    cfg.m = to_int(value);
  } else if (key == "ell") {
    cfg.ell = to_int(value);
  } else if (key == "sample_size") {
    cfg.sample_size = to_int(value);
  } else if (key == "holdout_frac") {
    cfg.holdout_frac = to_double(value);
  } else if (key == "bin_size") {
    cfg.bin_size = to_int(value);
  } else if (key == "num_bins") {
    cfg.num_bins = to_int(value);
  } else if (key == "feature_layout") {
    cfg.layout = parse_or_throw<FeatureLayout>(
        value, line_no,
        [](const std::string& v) { return feature_layout_from_string(v); });
  } else if (key == "n_trees") {
    cfg.n_trees = to_int(value);
  } else if (key == "smote_k") {
    cfg.smote_k = to_int(value);
  } else if (key == "master_seed") {
    cfg.master_seed = to_u64(value);
  } else if (key == "pair_cap") {
    if (value == "none" || value.empty()) {
      cfg.pair_cap.reset();
    } else {
      cfg.pair_cap = to_i64(value);
    }
  } else if (key == "swap_budget_factor") {
    cfg.swap_budget_factor = to_double(value);
  } else if (key == "max_attempts_factor") {
    cfg.max_attempts_factor = to_double(value);
  } else if (key == "jdd_tolerance") {
    cfg.jdd_tolerance = to_i64(value);
  } else if (key == "cspec_tolerance") {
    cfg.cspec_tolerance = to_double(value);
  } else if (key == "compute_dissimilarity") {
    cfg.compute_dissimilarity = to_bool(value);
  } else if (key == "threads") {
    cfg.threads = to_int(value);
  } else {
    throw ParseError("unknown config key: " + key, line_no);
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key = value", line_no);
    }
    apply_config_entry(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)),
                       line_no);
  }
  return cfg;
}

// ----- pipeline --------------------------------------------------------------

namespace {

struct InstanceTask {
  std::size_t cell_index;
  DkLevel level;
  OverlapStrategy strategy;
  const Graph* side_graph;
  std::string instance_id;
  std::uint64_t si;   // strategy index in config order
  std::uint64_t li;   // level index in config order
  std::uint64_t idx;  // instance index within the cell
};

struct InstanceOutcome {
  InstanceReport report;
  std::vector<EvalRow> evals;
};

InstanceOutcome run_instance(const InstanceTask& t, const ExperimentConfig& cfg) {
  InstanceOutcome out;
  out.report.instance_id = t.instance_id;
  const std::uint64_t master = cfg.master_seed;
  try {
    GenParams gp;
    gp.level = t.level;
    gp.rng_seed = derive_seed(master, "gen", t.si, t.li, t.idx);
    gp.swap_budget_factor = cfg.swap_budget_factor;
    gp.max_attempts_factor = cfg.max_attempts_factor;
    gp.jdd_tolerance = cfg.jdd_tolerance;
    gp.cspec_tolerance = cfg.cspec_tolerance;
    GenResult gen = generate(*t.side_graph, gp);
    out.report.gen_stats = gen.stats;

    const OverlapSplit re =
        split(gen.graph, cfg.alpha, t.strategy,
              derive_seed(master, "resplit", t.si, t.li, t.idx));
    const Graph& g_aux = re.g1;
    const Graph& g_san = re.g2;

    const auto sigs_san = signature_matrix(g_san, cfg.bin_size, cfg.num_bins);
    const auto sigs_aux = signature_matrix(g_aux, cfg.bin_size, cfg.num_bins);
    const std::uint64_t pair_seed = derive_seed(master, "pairs", t.si, t.li, t.idx);

    PairCounts counts;
    PairSource source = [&](const PairVisitor& visit) {
      counts = for_each_pair(g_san, g_aux, sigs_san, sigs_aux, cfg.layout,
                             cfg.pair_cap, pair_seed, visit);
    };

    SampleParams sp;
    sp.ell = cfg.ell;
    sp.sample_size = cfg.sample_size;
    sp.holdout_frac = cfg.holdout_frac;
    sp.smote_k = cfg.smote_k;
    sp.seed = derive_seed(master, "samples", t.si, t.li, t.idx);
    auto sets = build_balanced_samples(source, sp);
    out.report.pairs = counts;

    for (std::size_t i = 0; i < sets.size(); ++i) {
      ForestParams fp;
      fp.n_trees = cfg.n_trees;
      fp.seed = sets[i].seed;
      const Forest forest = train_forest(sets[i].train, fp);
      EvalRow row;
      row.instance_id = t.instance_id;
      row.sample_id = static_cast<int>(i);
      row.eval = evaluate(forest, sets[i].test);
      out.evals.push_back(std::move(row));
    }

    out.report.san_metrics = compute_metrics(g_san);
    out.report.aux_metrics = compute_metrics(g_aux);
    if (cfg.compute_dissimilarity && t.level != DkLevel::GS) {
      out.report.dissimilarity = d_measure(*t.side_graph, gen.graph);
    }
  } catch (const Error& e) {
    out.report.error = e.what();
    out.evals.clear();
  } catch (const std::exception& e) {
    out.report.error = std::string("unexpected: ") + e.what();
    out.evals.clear();
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dataset_path.empty()) throw ParamError("dataset_path is required");

  ExperimentReport report;
  report.version = dkbench_version();
  report.created_at = now_iso8601();
  report.dataset =
      cfg.dataset_name.empty() ? path_stem(cfg.dataset_path) : cfg.dataset_name;
  report.config = cfg;

  const Graph source = load_edge_list_file(cfg.dataset_path);

  // One first split per strategy, shared by every level so that conditions
  // differ only in the anonymizer.
  std::vector<std::optional<OverlapSplit>> first_split(cfg.strategies.size());
  std::vector<std::string> split_error(cfg.strategies.size());
  for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
    try {
      first_split[si] = split(source, cfg.alpha, cfg.strategies[si],
                              derive_seed(cfg.master_seed, "split1", si));
    } catch (const Error& e) {
      split_error[si] = e.what();
    }
  }

  std::vector<InstanceTask> tasks;
  for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
      CellReport cell;
      cell.level = cfg.levels[li];
      cell.strategy = cfg.strategies[si];
      cell.error = split_error[si];
      const std::size_t cell_index = report.cells.size();
      report.cells.push_back(std::move(cell));
      if (!first_split[si]) continue;

      const int per_side = cfg.levels[li] == DkLevel::GS ? 1 : cfg.m;
      for (int side = 0; side < 2; ++side) {
        const Graph* sg =
            side == 0 ? &first_split[si]->g1 : &first_split[si]->g2;
        for (int j = 0; j < per_side; ++j) {
          InstanceTask t;
          t.cell_index = cell_index;
          t.level = cfg.levels[li];
          t.strategy = cfg.strategies[si];
          t.side_graph = sg;
          t.instance_id = (side == 0 ? "G1." : "G2.") + std::to_string(j);
          t.si = si;
          t.li = li;
          t.idx = static_cast<std::uint64_t>(side) * cfg.m + j;
          tasks.push_back(std::move(t));
        }
      }
    }
  }

  std::vector<InstanceOutcome> outcomes(tasks.size());
  const int n_threads =
      std::max(1, std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      outcomes[i] = run_instance(tasks[i], cfg);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
          outcomes[i] = run_instance(tasks[i], cfg);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CellReport& cell = report.cells[tasks[i].cell_index];
    cell.instances.push_back(std::move(outcomes[i].report));
    for (auto& row : outcomes[i].evals) cell.evals.push_back(std::move(row));
  }
  return report;
}

// ----- serialization ----------------------------------------------------------

namespace {

using nlohmann::json;

json metric_to_json(const MetricValue& m) {
  json j;
  if (m.value) {
    j["value"] = *m.value;
  } else {
    j["value"] = nullptr;
    j["reason"] = m.reason;
  }
  return j;
}

MetricValue metric_from_json(const json& j) {
  MetricValue m;
  if (!j.at("value").is_null()) {
    m.value = j.at("value").get<double>();
  } else {
    m.reason = j.value("reason", "");
  }
  return m;
}

json metrics_row_to_json(const GraphMetricsRow& r) {
  json j;
  j["n_nodes"] = r.n_nodes;
  j["n_edges"] = r.n_edges;
  j["avg_degree"] = r.avg_degree;
  j["density"] = metric_to_json(r.density);
  j["transitivity"] = metric_to_json(r.transitivity);
  j["avg_clustering"] = metric_to_json(r.avg_clustering);
  j["assortativity"] = metric_to_json(r.assortativity);
  j["avg_path_length"] = metric_to_json(r.avg_path_length);
  j["degree1_pct"] = metric_to_json(r.degree1_pct);
  return j;
}

GraphMetricsRow metrics_row_from_json(const json& j) {
  GraphMetricsRow r;
  r.n_nodes = j.at("n_nodes").get<int>();
  r.n_edges = j.at("n_edges").get<std::int64_t>();
  r.avg_degree = j.at("avg_degree").get<double>();
  r.density = metric_from_json(j.at("density"));
  r.transitivity = metric_from_json(j.at("transitivity"));
  r.avg_clustering = metric_from_json(j.at("avg_clustering"));
  r.assortativity = metric_from_json(j.at("assortativity"));
  r.avg_path_length = metric_from_json(j.at("avg_path_length"));
  r.degree1_pct = metric_from_json(j.at("degree1_pct"));
  return r;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["dataset_path"] = c.dataset_path;
  j["dataset_name"] = c.dataset_name;
  j["alpha"] = c.alpha;
  j["strategies"] = json::array();
  for (auto s : c.strategies) j["strategies"].push_back(to_string(s));
  j["dk_levels"] = json::array();
  for (auto l : c.levels) j["dk_levels"].push_back(to_string(l));
  j["m"] = c.m;
  j["ell"] = c.ell;
  j["sample_size"] = c.sample_size;
  j["holdout_frac"] = c.holdout_frac;
  j["bin_size"] = c.bin_size;
  j["num_bins"] = c.num_bins;
  j["feature_layout"] = to_string(c.layout);
  j["n_trees"] = c.n_trees;
  j["smote_k"] = c.smote_k;
  j["master_seed"] = c.master_seed;
  if (c.pair_cap) {
    j["pair_cap"] = *c.pair_cap;
  } else {
    j["pair_cap"] = nullptr;
  }
  j["swap_budget_factor"] = c.swap_budget_factor;
  j["max_attempts_factor"] = c.max_attempts_factor;
  j["jdd_tolerance"] = c.jdd_tolerance;
  j["cspec_tolerance"] = c.cspec_tolerance;
  j["compute_dissimilarity"] = c.compute_dissimilarity;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.dataset_path = j.at("dataset_path").get<std::string>();
  c.dataset_name = j.at("dataset_name").get<std::string>();
  c.alpha = j.at("alpha").get<double>();
  c.strategies.clear();
  for (const auto& s : j.at("strategies")) {
    c.strategies.push_back(strategy_from_string(s.get<std::string>()));
  }
  c.levels.clear();
  for (const auto& l : j.at("dk_levels")) {
    c.levels.push_back(dk_level_from_string(l.get<std::string>()));
  }
  c.m = j.at("m").get<int>();
  c.ell = j.at("ell").get<int>();
  c.sample_size = j.at("sample_size").get<int>();
  c.holdout_frac = j.at("holdout_frac").get<double>();
  c.bin_size = j.at("bin_size").get<int>();
  c.num_bins = j.at("num_bins").get<int>();
  c.layout = feature_layout_from_string(j.at("feature_layout").get<std::string>());
  c.n_trees = j.at("n_trees").get<int>();
  c.smote_k = j.at("smote_k").get<int>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.at("pair_cap").is_null()) {
    c.pair_cap.reset();
  } else {
    c.pair_cap = j.at("pair_cap").get<std::int64_t>();
  }
  c.swap_budget_factor = j.at("swap_budget_factor").get<double>();
  c.max_attempts_factor = j.at("max_attempts_factor").get<double>();
  c.jdd_tolerance = j.at("jdd_tolerance").get<std::int64_t>();
  c.cspec_tolerance = j.at("cspec_tolerance").get<double>();
  c.compute_dissimilarity = j.at("compute_dissimilarity").get<bool>();
  c.threads = j.at("threads").get<int>();
  return c;
}

json eval_to_json(const EvalResult& e) {
  json j;
  j["precision"] = e.precision;
  j["recall"] = e.recall;
  j["f1"] = e.f1;
  j["tp"] = e.tp;
  j["fp"] = e.fp;
  j["tn"] = e.tn;
  j["fn"] = e.fn;
  return j;
}

EvalResult eval_from_json(const json& j) {
  EvalResult e;
  e.precision = j.at("precision").get<double>();
  e.recall = j.at("recall").get<double>();
  e.f1 = j.at("f1").get<double>();
  e.tp = j.at("tp").get<std::int64_t>();
  e.fp = j.at("fp").get<std::int64_t>();
  e.tn = j.at("tn").get<std::int64_t>();
  e.fn = j.at("fn").get<std::int64_t>();
  return e;
}

json instance_to_json(const InstanceReport& r) {
  json j;
  j["instance_id"] = r.instance_id;
  j["gen_stats"] = {{"accepted_swaps", r.gen_stats.accepted_swaps},
                    {"attempts", r.gen_stats.attempts},
                    {"jdd_distance", r.gen_stats.jdd_distance},
                    {"cspec_distance", r.gen_stats.cspec_distance},
                    {"swap_budget_met", r.gen_stats.swap_budget_met},
                    {"used_fallback", r.gen_stats.used_fallback}};
  j["pairs"] = {{"total", r.pairs.total}, {"identical", r.pairs.identical}};
  j["san_metrics"] = metrics_row_to_json(r.san_metrics);
  j["aux_metrics"] = metrics_row_to_json(r.aux_metrics);
  if (r.dissimilarity) {
    j["dissimilarity"] = {{"d", r.dissimilarity->d},
                          {"term_distance", r.dissimilarity->term_distance},
                          {"term_nnd", r.dissimilarity->term_nnd},
                          {"term_centrality", r.dissimilarity->term_centrality},
                          {"approximate", r.dissimilarity->approximate},
                          {"bfs_roots_used", r.dissimilarity->bfs_roots_used}};
  } else {
    j["dissimilarity"] = nullptr;
  }
  j["error"] = r.error;
  return j;
}

InstanceReport instance_from_json(const json& j) {
  InstanceReport r;
  r.instance_id = j.at("instance_id").get<std::string>();
  const auto& gs = j.at("gen_stats");
  r.gen_stats.accepted_swaps = gs.at("accepted_swaps").get<std::int64_t>();
  r.gen_stats.attempts = gs.at("attempts").get<std::int64_t>();
  r.gen_stats.jdd_distance = gs.at("jdd_distance").get<std::int64_t>();
  r.gen_stats.cspec_distance = gs.at("cspec_distance").get<double>();
  r.gen_stats.swap_budget_met = gs.at("swap_budget_met").get<bool>();
  r.gen_stats.used_fallback = gs.at("used_fallback").get<bool>();
  r.pairs.total = j.at("pairs").at("total").get<std::int64_t>();
  r.pairs.identical = j.at("pairs").at("identical").get<std::int64_t>();
  r.san_metrics = metrics_row_from_json(j.at("san_metrics"));
  r.aux_metrics = metrics_row_from_json(j.at("aux_metrics"));
  if (!j.at("dissimilarity").is_null()) {
    const auto& d = j.at("dissimilarity");
    DissimilarityScore s;
    s.d = d.at("d").get<double>();
    s.term_distance = d.at("term_distance").get<double>();
    s.term_nnd = d.at("term_nnd").get<double>();
    s.term_centrality = d.at("term_centrality").get<double>();
    s.approximate = d.at("approximate").get<bool>();
    s.bfs_roots_used = d.at("bfs_roots_used").get<int>();
    r.dissimilarity = s;
  }
  r.error = j.value("error", "");
  return r;
}

}  // namespace

std::string report_to_json(const ExperimentReport& r) {
  json j;
  j["version"] = r.version;
  j["created_at"] = r.created_at;
  j["dataset"] = r.dataset;
  j["config"] = config_to_json(r.config);
  j["cells"] = json::array();
  for (const auto& cell : r.cells) {
    json jc;
    jc["dk_level"] = to_string(cell.level);
    jc["strategy"] = to_string(cell.strategy);
    jc["error"] = cell.error;
    jc["instances"] = json::array();
    for (const auto& inst : cell.instances) {
      jc["instances"].push_back(instance_to_json(inst));
    }
    jc["evals"] = json::array();
    for (const auto& row : cell.evals) {
      json je = eval_to_json(row.eval);
      je["instance_id"] = row.instance_id;
      je["sample_id"] = row.sample_id;
      jc["evals"].push_back(std::move(je));
    }
    j["cells"].push_back(std::move(jc));
  }
  return j.dump(2);
}

ExperimentReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentReport r;
  r.version = j.at("version").get<std::string>();
  r.created_at = j.at("created_at").get<std::string>();
  r.dataset = j.at("dataset").get<std::string>();
  r.config = config_from_json(j.at("config"));
  for (const auto& jc : j.at("cells")) {
    CellReport cell;
    cell.level = dk_level_from_string(jc.at("dk_level").get<std::string>());
    cell.strategy = strategy_from_string(jc.at("strategy").get<std::string>());
    cell.error = jc.value("error", "");
    for (const auto& ji : jc.at("instances")) {
      cell.instances.push_back(instance_from_json(ji));
    }
    for (const auto& je : jc.at("evals")) {
      EvalRow row;
      row.instance_id = je.at("instance_id").get<std::string>();
      row.sample_id = je.at("sample_id").get<int>();
      row.eval = eval_from_json(je);
      cell.evals.push_back(std::move(row));
    }
    r.cells.push_back(std::move(cell));
  }
  return r;
}

std::string f1_csv(const ExperimentReport& r) {
  std::string out =
      "dataset,dk_level,strategy,instance_id,sample_id,precision,recall,f1,"
      "tp,fp,tn,fn\n";
  for (const auto& cell : r.cells) {
    for (const auto& row : cell.evals) {
      out += r.dataset;
      out += ',';
      out += to_string(cell.level);
      out += ',';
      out += to_string(cell.strategy);
      out += ',';
      out += row.instance_id;
      out += ',';
      out += std::to_string(row.sample_id);
      out += ',';
      out += fmt_double(row.eval.precision);
      out += ',';
      out += fmt_double(row.eval.recall);
      out += ',';
      out += fmt_double(row.eval.f1);
      out += ',';
      out += std::to_string(row.eval.tp);
      out += ',';
      out += std::to_string(row.eval.fp);
      out += ',';
      out += std::to_string(row.eval.tn);
      out += ',';
      out += std::to_string(row.eval.fn);
      out += '\n';
    }
  }
  return out;
}

void emit_report(const ExperimentReport& r, const std::string& out_dir) {
  const std::string report_path = out_dir + "/report.json";
  std::ofstream rep(report_path);
  if (!rep) throw IoError("cannot write " + report_path);
  rep << report_to_json(r) << '\n';
  if (!rep) throw IoError("write failed: " + report_path);

  const std::string csv_path = out_dir + "/f1.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path);
  csv << f1_csv(r);
  if (!csv) throw IoError("write failed: " + csv_path);
}

int report_exit_code(const ExperimentReport& r) {
  bool any_error = false;
  bool any_success = false;
  for (const auto& cell : r.cells) {
    if (!cell.error.empty()) {
      any_error = true;
      continue;
    }
    for (const auto& inst : cell.instances) {
      if (inst.error.empty()) {
        any_success = true;
      } else {
        any_error = true;
      }
    }
  }
  if (!any_error) return 0;
  return any_success ? 3 : 2;
}

}  // namespace dkbench
