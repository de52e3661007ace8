#include "dkbench/dissimilarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "dkbench/errors.hpp"
#include "dkbench/rng.hpp"

namespace dkbench {

void DMeasureParams::validate() const {
  if (w_distance < 0 || w_nnd < 0 || w_centrality < 0) {
    throw ParamError("D-measure weights must be nonnegative");
  }
  const double sum = w_distance + w_nnd + w_centrality;
  if (sum <= 0 || sum > 1.0 + 1e-12) {
    throw ParamError("D-measure weights must sum to (0, 1]");
  }
  if (exact_bfs_threshold < 1 || bfs_sample_roots < 1) {
    throw ParamError("BFS sampling parameters must be >= 1");
  }
}

namespace {

constexpr double kLog2 = 0.6931471805599453;

// Node-distance distributions averaged over (possibly sampled) BFS roots.
// Finite distances go to bins [d-1]; unreachable mass has its own bucket.
struct DistProfile {
  std::vector<double> mu_finite;
  double mu_inf = 0.0;
  double nnd = 0.0;
  bool approximate = false;
  int roots = 0;
};

double entropy(const std::vector<double>& finite, double inf_mass) {
  double h = 0.0;
  for (double p : finite) {
    if (p > 0) h -= p * std::log(p);
  }
  if (inf_mass > 0) h -= inf_mass * std::log(inf_mass);
  return h;
}

DistProfile distance_profile(const Graph& g, const DMeasureParams& prm) {
  DistProfile prof;
  const int n = g.n_nodes();
  if (n <= 1) {
    prof.roots = n;
    return prof;
  }

  std::vector<int> roots;
  if (n <= prm.exact_bfs_threshold) {
    roots.resize(n);
    std::iota(roots.begin(), roots.end(), 0);
  } else {
    // deterministic fixed-seed sample so scores are stable and symmetric
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    Rng rng(0x5D155D155D155D15ull);
    rng.shuffle(all);
    all.resize(prm.bfs_sample_roots);
    std::sort(all.begin(), all.end());
    roots = std::move(all);
    prof.approximate = true;
  }
  prof.roots = static_cast<int>(roots.size());

  const double denom = static_cast<double>(n - 1);
  std::vector<int> dist(n);
  std::vector<double> mu;  // finite bins, grown as needed
  double mu_inf = 0.0;
  double mean_entropy = 0.0;
  int diam = 0;
  std::vector<double> p_finite;

  for (int root : roots) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    std::queue<int> q;
    q.push(root);
    int reached = 0;
    int far = 0;
    p_finite.clear();
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          far = std::max(far, dist[v]);
          if (static_cast<int>(p_finite.size()) < dist[v]) {
            p_finite.resize(dist[v], 0.0);
          }
          p_finite[dist[v] - 1] += 1.0;
          ++reached;
          q.push(v);
        }
      }
    }
    diam = std::max(diam, far);
    for (double& x : p_finite) x /= denom;
    const double p_inf = static_cast<double>(n - 1 - reached) / denom;
    if (mu.size() < p_finite.size()) mu.resize(p_finite.size(), 0.0);
    for (std::size_t i = 0; i < p_finite.size(); ++i) mu[i] += p_finite[i];
    mu_inf += p_inf;
    mean_entropy += entropy(p_finite, p_inf);
  }

  const double r = static_cast<double>(prof.roots);
  for (double& x : mu) x /= r;
  mu_inf /= r;
  mean_entropy /= r;

  // generalized Jensen-Shannon divergence of the per-root distributions;
  // values below the float-summation noise floor count as zero dispersion,
  // otherwise the square root below amplifies ~1e-17 noise to ~1e-9
  const double j = std::max(0.0, entropy(mu, mu_inf) - mean_entropy);
  if (diam >= 1 && j > 1e-12) {
    prof.nnd = std::min(1.0, j / std::log(static_cast<double>(diam) + 1.0));
  }
  prof.mu_finite = std::move(mu);
  prof.mu_inf = mu_inf;
  return prof;
}

// Divergences below this are float cancellation noise (the p/q ratio of two
// near-identical distributions rounds at the ulp of 1.0, leaving ~1e-16 per
// bucket); the square roots taken later would amplify that to ~1e-8.
constexpr double kJsdNoiseFloor = 1e-14;

double jsd_term(double p, double q) {
  double acc = 0.0;
  if (p > 0) acc += p * std::log(2.0 * p / (p + q));
  if (q > 0) acc += q * std::log(2.0 * q / (p + q));
  return acc;
}

double jsd_buckets(const std::vector<double>& a_finite, double a_inf,
                   const std::vector<double>& b_finite, double b_inf) {
  const std::size_t m = std::max(a_finite.size(), b_finite.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double p = i < a_finite.size() ? a_finite[i] : 0.0;
    const double q = i < b_finite.size() ? b_finite[i] : 0.0;
    acc += jsd_term(p, q);
  }
  acc += jsd_term(a_inf, b_inf);
  acc /= 2.0;
  return acc < kJsdNoiseFloor ? 0.0 : acc;
}

double jsd_vectors(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t m = std::max(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += jsd_term(i < a.size() ? a[i] : 0.0, i < b.size() ? b[i] : 0.0);
  }
  acc /= 2.0;
  return acc < kJsdNoiseFloor ? 0.0 : acc;
}

// Alpha-centrality with alpha = 1/n and unit exogenous input, solved by
// fixed-point iteration x = 1 + alpha * A x (A^c x computed implicitly for
// the complement). Returned as a descending probability vector.
std::vector<double> centrality_distribution(const Graph& g, bool complement) {
  const int n = g.n_nodes();
  if (n == 1) return {1.0};
  const double alpha = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, 1.0);
  std::vector<double> next(n);
  // Contraction (alpha * maxdeg < 1), so the update norm shrinks until it
  // stalls at float noise; running to that fixed point keeps the result
  // stable under node relabeling.
  const int max_iter = 120 * n + 400;
  double prev_delta = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    double sum = 0.0;
    if (complement) {
      sum = std::accumulate(x.begin(), x.end(), 0.0);
    }
    double delta = 0.0;
    for (int u = 0; u < n; ++u) {
      double acc = 0.0;
      for (int v : g.neighbors(u)) acc += x[v];
      if (complement) acc = sum - x[u] - acc;
      next[u] = 1.0 + alpha * acc;
      delta = std::max(delta, std::abs(next[u] - x[u]));
    }
    x.swap(next);
    if (delta == 0.0 || delta >= prev_delta) break;
    prev_delta = delta;
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= total;
  std::sort(x.begin(), x.end(), std::greater<>());
  return x;
}

}  // namespace

DissimilarityScore d_measure(const Graph& g1, const Graph& g2,
                             const DMeasureParams& p) {
  p.validate();
  if (g1.n_nodes() == 0 || g2.n_nodes() == 0) {
    throw ParamError("d_measure needs nonempty graphs");
  }

  const DistProfile p1 = distance_profile(g1, p);
  const DistProfile p2 = distance_profile(g2, p);

  DissimilarityScore score;
  score.approximate = p1.approximate || p2.approximate;
  score.bfs_roots_used = std::max(p1.roots, p2.roots);

  score.term_distance = std::sqrt(
      jsd_buckets(p1.mu_finite, p1.mu_inf, p2.mu_finite, p2.mu_inf) / kLog2);
  score.term_nnd = std::abs(std::sqrt(p1.nnd) - std::sqrt(p2.nnd));

  if (p.w_centrality > 0) {
    const auto c1 = centrality_distribution(g1, false);
    const auto c2 = centrality_distribution(g2, false);
    const auto c1c = centrality_distribution(g1, true);
    const auto c2c = centrality_distribution(g2, true);
    score.term_centrality =
        (std::sqrt(jsd_vectors(c1, c2) / kLog2) +
         std::sqrt(jsd_vectors(c1c, c2c) / kLog2)) /
        2.0;
  }

  score.d = p.w_distance * score.term_distance + p.w_nnd * score.term_nnd +
            p.w_centrality * score.term_centrality;
  return score;
}

}  // namespace dkbench
