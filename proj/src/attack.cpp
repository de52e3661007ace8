#include "dkbench/attack.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dkbench/errors.hpp"

namespace dkbench {

namespace {

// Distinct flat indices in [0, total), ascending. Rejection sampling for
// sparse draws, partial shuffle otherwise.
std::vector<std::int64_t> distinct_indices(std::int64_t total, std::int64_t k,
                                           Rng& rng) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(k));
  if (k * 2 <= total) {
    std::unordered_set<std::int64_t> taken;
    taken.reserve(static_cast<std::size_t>(k) * 2);
    while (static_cast<std::int64_t>(out.size()) < k) {
      const auto idx = static_cast<std::int64_t>(
          rng.below(static_cast<std::uint64_t>(total)));
      if (taken.insert(idx).second) out.push_back(idx);
    }
  } else {
    std::vector<std::int64_t> all(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) all[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::int64_t>(rng.below(
                             static_cast<std::uint64_t>(total - i)));
      std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
    }
    all.resize(static_cast<std::size_t>(k));
    out = std::move(all);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PairCounts for_each_pair(const Graph& g_san, const Graph& g_aux,
                         const std::vector<NodeSignature>& sigs_san,
                         const std::vector<NodeSignature>& sigs_aux,
                         FeatureLayout layout, std::optional<std::int64_t> cap,
                         std::uint64_t seed, const PairVisitor& visit) {
  if (g_san.n_nodes() == 0 || g_aux.n_nodes() == 0) {
    throw ParamError("pair generation needs two nonempty graphs");
  }
  const std::int64_t n1 = g_san.n_nodes();
  const std::int64_t n2 = g_aux.n_nodes();
  const std::int64_t total = n1 * n2;

  // identical iff both nodes carry the same original label
  std::vector<int> twin(static_cast<std::size_t>(n1), -1);
  for (int u = 0; u < n1; ++u) {
    if (auto idx = g_aux.index_of(g_san.label(u))) twin[u] = *idx;
  }

  PairCounts counts;
  auto emit = [&](int u, int v) {
    PairExample ex;
    ex.san_node = u;
    ex.aux_node = v;
    ex.identical = twin[u] == v;
    ex.features = pair_features(sigs_san[u], sigs_aux[v], layout);
    ++counts.total;
    counts.identical += ex.identical ? 1 : 0;
    visit(std::move(ex));
  };

  if (!cap || *cap >= total) {
    for (int u = 0; u < n1; ++u) {
      for (int v = 0; v < n2; ++v) emit(u, v);
    }
    return counts;
  }
  if (*cap < 0) throw ParamError("pair cap must be >= 0");
  Rng rng(derive_seed(seed, "pair-cap"));
  for (std::int64_t flat : distinct_indices(total, *cap, rng)) {
    emit(static_cast<int>(flat / n2), static_cast<int>(flat % n2));
  }
  return counts;
}

std::vector<PairExample> generate_pairs(const Graph& g_san, const Graph& g_aux,
                                        int b, int B, FeatureLayout layout,
                                        std::optional<std::int64_t> cap,
                                        std::uint64_t seed, PairCounts* counts) {
  const auto sigs_san = signature_matrix(g_san, b, B);
  const auto sigs_aux = signature_matrix(g_aux, b, B);
  std::vector<PairExample> out;
  PairCounts c = for_each_pair(g_san, g_aux, sigs_san, sigs_aux, layout, cap,
                               seed, [&out](PairExample&& ex) {
                                 out.push_back(std::move(ex));
                               });
  if (counts) *counts = c;
  return out;
}

std::vector<std::size_t> reservoir_sample_indices(std::size_t stream_len,
                                                  std::size_t k,
                                                  std::uint64_t seed) {
  if (k < 1) throw ParamError("reservoir size must be >= 1");
  Reservoir<std::size_t> res(k, seed);
  for (std::size_t i = 0; i < stream_len; ++i) res.offer(i);
  return res.items();
}

std::vector<std::vector<double>> smote(
    const std::vector<std::vector<double>>& minority, int k_neighbors,
    int n_synthetic, std::uint64_t seed) {
  if (n_synthetic <= 0) return {};
  if (minority.empty()) {
    throw SamplingError("SMOTE needs at least one minority point");
  }
  if (k_neighbors < 1) throw ParamError("k_neighbors must be >= 1");

  const std::size_t m = minority.size();
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(n_synthetic));

  if (m == 1) {
    // degenerate rule: duplicate the lone point
    for (int i = 0; i < n_synthetic; ++i) out.push_back(minority[0]);
    return out;
  }

  const std::size_t k_eff = std::min<std::size_t>(k_neighbors, m - 1);
  std::vector<std::vector<std::size_t>> knn(m);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < m; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t f = 0; f < minority[i].size(); ++f) {
        const double diff = minority[i][f] - minority[j][f];
        d2 += diff * diff;
      }
      dist.emplace_back(d2, j);
    }
    std::partial_sort(dist.begin(), dist.begin() + k_eff, dist.end());
    knn[i].reserve(k_eff);
    for (std::size_t t = 0; t < k_eff; ++t) knn[i].push_back(dist[t].second);
  }

  for (int s = 0; s < n_synthetic; ++s) {
    const std::size_t i = rng.index(m);
    const std::size_t nn = knn[i][rng.index(k_eff)];
    const double u = rng.real01();
    std::vector<double> point(minority[i].size());
    for (std::size_t f = 0; f < point.size(); ++f) {
      point[f] = minority[i][f] + u * (minority[nn][f] - minority[i][f]);
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<SampleSet> build_balanced_samples(const PairSource& source,
                                              const SampleParams& p) {
  if (p.ell < 1) throw ParamError("ell must be >= 1");
  if (p.sample_size < 4) throw ParamError("sample_size must be >= 4");
  if (!(p.holdout_frac > 0.0) || !(p.holdout_frac < 1.0)) {
    throw ParamError("holdout_frac must be in (0, 1)");
  }
  const std::size_t k_pos = (static_cast<std::size_t>(p.sample_size) + 1) / 2;
  const std::size_t k_neg = static_cast<std::size_t>(p.sample_size) / 2;

  std::vector<Reservoir<PairExample>> pos_res;
  std::vector<Reservoir<PairExample>> neg_res;
  pos_res.reserve(p.ell);
  neg_res.reserve(p.ell);
  for (int i = 0; i < p.ell; ++i) {
    pos_res.emplace_back(k_pos, derive_seed(p.seed, "reservoir-pos", i));
    neg_res.emplace_back(k_neg, derive_seed(p.seed, "reservoir-neg", i));
  }

  source([&](PairExample&& ex) {
    auto& lane = ex.identical ? pos_res : neg_res;
    for (auto& r : lane) r.offer(ex);
  });

  std::vector<SampleSet> sets;
  sets.reserve(p.ell);
  for (int i = 0; i < p.ell; ++i) {
    auto& pos = pos_res[i].items();
    auto& neg = neg_res[i].items();
    if (pos.size() < 2) {
      throw SamplingError("too few identical pairs: have " +
                          std::to_string(pos.size()) + ", need at least 2");
    }
    if (neg.size() < 2) {
      throw SamplingError("too few non-identical pairs: have " +
                          std::to_string(neg.size()) + ", need at least 2");
    }

    SampleSet set;
    set.seed = derive_seed(p.seed, "sample", i);
    Rng rng(derive_seed(p.seed, "holdout", i));

    auto split_class = [&](std::vector<PairExample>& cls) {
      rng.shuffle(cls);
      auto n_test = static_cast<std::size_t>(
          std::lround(p.holdout_frac * static_cast<double>(cls.size())));
      n_test = std::clamp<std::size_t>(n_test, 1, cls.size() - 1);
      for (std::size_t t = 0; t < cls.size(); ++t) {
        if (t < n_test) {
          set.test.push_back(cls[t]);
        } else {
          set.train.push_back(LabeledPoint{cls[t].features, cls[t].identical});
        }
      }
    };
    split_class(pos);
    split_class(neg);

    std::int64_t train_pos = 0;
    for (const auto& pt : set.train) train_pos += pt.positive ? 1 : 0;
    const std::int64_t train_neg =
        static_cast<std::int64_t>(set.train.size()) - train_pos;
    const bool pos_is_minority = train_pos < train_neg;
    const std::int64_t deficit = std::abs(train_pos - train_neg);
    if (deficit > 0) {
      std::vector<std::vector<double>> minority;
      for (const auto& pt : set.train) {
        if (pt.positive == pos_is_minority) minority.push_back(pt.x);
      }
      auto synth = smote(minority, p.smote_k, static_cast<int>(deficit),
                         derive_seed(p.seed, "smote", i));
      for (auto& x : synth) {
        set.train.push_back(LabeledPoint{std::move(x), pos_is_minority});
      }
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

EvalResult eval_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                            std::int64_t fn) {
  EvalResult r;
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  if (tp + fp > 0) {
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn > 0) {
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

EvalResult evaluate(const Forest& forest, const std::vector<PairExample>& test) {
  if (test.empty()) throw ParamError("empty test set");
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const auto& ex : test) {
    const bool predicted = forest.predict(ex.features);
    if (predicted && ex.identical) {
      ++tp;
    } else if (predicted && !ex.identical) {
      ++fp;
    } else if (!predicted && !ex.identical) {
      ++tn;
    } else {
      ++fn;
    }
  }
  return eval_from_counts(tp, fp, tn, fn);
}

}  // namespace dkbench
