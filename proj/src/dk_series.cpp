#include "dkbench/dk_series.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "dkbench/errors.hpp"
#include "dkbench/metrics.hpp"

namespace dkbench {

std::string to_string(DkLevel level) {
  switch (level) {
    case DkLevel::GS: return "GS";
    case DkLevel::OneK: return "1K";
    case DkLevel::TwoK: return "2K";
    case DkLevel::TwoFiveK: return "2.5K";
  }
  return "?";
}

DkLevel dk_level_from_string(std::string_view s) {
  if (s == "GS" || s == "gs") return DkLevel::GS;
  if (s == "1K" || s == "1k") return DkLevel::OneK;
  if (s == "2K" || s == "2k") return DkLevel::TwoK;
  if (s == "2.5K" || s == "2.5k" || s == "25k") return DkLevel::TwoFiveK;
  throw ParamError("unknown dK level: " + std::string(s));
}

double extract_0k(const Graph& g) { return avg_degree(g); }

DegreeDistribution extract_1k(const Graph& g) {
  DegreeDistribution dd;
  for (int u = 0; u < g.n_nodes(); ++u) ++dd[g.degree(u)];
  return dd;
}

JointDegreeDistribution extract_2k(const Graph& g) {
  JointDegreeDistribution jdd;
  for (int u = 0; u < g.n_nodes(); ++u) {
    for (int v : g.neighbors(u)) {
      if (u < v) {
        const int du = g.degree(u);
        const int dv = g.degree(v);
        ++jdd[{std::min(du, dv), std::max(du, dv)}];
      }
    }
  }
  return jdd;
}

ClusteringSpectrum extract_cspec(const Graph& g) {
  std::map<int, std::pair<double, std::int64_t>> acc;  // degree -> (sum c, count)
  for (int u = 0; u < g.n_nodes(); ++u) {
    const int d = g.degree(u);
    if (d < 2) continue;
    auto& slot = acc[d];
    slot.first += local_clustering(g, u);
    slot.second += 1;
  }
  ClusteringSpectrum spec;
  for (const auto& [k, sc] : acc) {
    spec[k] = sc.first / static_cast<double>(sc.second);
  }
  return spec;
}

std::int64_t jdd_l1(const JointDegreeDistribution& a,
                    const JointDegreeDistribution& b) {
  std::int64_t dist = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      dist += std::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      dist += std::abs(ib->second);
      ++ib;
    } else {
      dist += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return dist;
}

double cspec_weighted_l1(const ClusteringSpectrum& a, const ClusteringSpectrum& b,
                         const DegreeDistribution& dd, std::int64_t n_nodes) {
  if (n_nodes <= 0) return 0.0;
  std::set<int> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  double dist = 0.0;
  for (int k : keys) {
    auto ita = a.find(k);
    auto itb = b.find(k);
    const double va = ita == a.end() ? 0.0 : ita->second;
    const double vb = itb == b.end() ? 0.0 : itb->second;
    auto itd = dd.find(k);
    const double wk = itd == dd.end()
                          ? 0.0
                          : static_cast<double>(itd->second) /
                                static_cast<double>(n_nodes);
    dist += wk * std::abs(va - vb);
  }
  return dist;
}

DkTarget extract_target(const Graph& g, DkLevel level) {
  if (level == DkLevel::GS) {
    throw ParamError("GS has no dK target; it is the identity baseline");
  }
  DkTarget t;
  t.level = level;
  t.dd = extract_1k(g);
  if (level == DkLevel::TwoK || level == DkLevel::TwoFiveK) {
    t.jdd = extract_2k(g);
  }
  if (level == DkLevel::TwoFiveK) {
    t.cspec = extract_cspec(g);
  }
  return t;
}

std::string dk_target_to_json(const DkTarget& t) {
  nlohmann::json j;
  j["level"] = to_string(t.level);
  auto& dd = j["dd"] = nlohmann::json::array();
  for (const auto& [k, c] : t.dd) dd.push_back({k, c});
  auto& jdd = j["jdd"] = nlohmann::json::array();
  for (const auto& [kk, c] : t.jdd) jdd.push_back({kk.first, kk.second, c});
  auto& cs = j["cspec"] = nlohmann::json::array();
  for (const auto& [k, v] : t.cspec) cs.push_back({k, v});
  return j.dump(2);
}

DkTarget dk_target_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DkTarget t;
  t.level = dk_level_from_string(j.at("level").get<std::string>());
  for (const auto& e : j.at("dd")) {
    t.dd[e.at(0).get<int>()] = e.at(1).get<std::int64_t>();
  }
  for (const auto& e : j.at("jdd")) {
    t.jdd[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<std::int64_t>();
  }
  for (const auto& e : j.at("cspec")) {
    t.cspec[e.at(0).get<int>()] = e.at(1).get<double>();
  }
  return t;
}

}  // namespace dkbench
