#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dkbench/forest.hpp"
#include "dkbench/graph.hpp"
#include "dkbench/rng.hpp"
#include "dkbench/signatures.hpp"

namespace dkbench {

struct PairExample {
  int san_node = -1;
  int aux_node = -1;
  std::vector<double> features;
  bool identical = false;  // same original node label in both graphs
};

struct PairCounts {
  std::int64_t total = 0;
  std::int64_t identical = 0;
};

using PairVisitor = std::function<void(PairExample&&)>;

// Called with a visitor; must replay the same pair sequence on every call.
using PairSource = std::function<void(const PairVisitor&)>;

// Streams the cross product V(g_san) x V(g_aux) (or a uniform sample of
// `cap` distinct pairs) in deterministic order, labeling each pair by node
// label equality. Signatures must be indexed by node id of their graphs.
PairCounts for_each_pair(const Graph& g_san, const Graph& g_aux,
                         const std::vector<NodeSignature>& sigs_san,
                         const std::vector<NodeSignature>& sigs_aux,
                         FeatureLayout layout, std::optional<std::int64_t> cap,
                         std::uint64_t seed, const PairVisitor& visit);

// Convenience: materializes the stream.
std::vector<PairExample> generate_pairs(const Graph& g_san, const Graph& g_aux,
                                        int b, int B, FeatureLayout layout,
                                        std::optional<std::int64_t> cap,
                                        std::uint64_t seed,
                                        PairCounts* counts = nullptr);

// Single-pass algorithm-R reservoir; after n offers every item has been kept
// with probability k/n.
template <typename T>
class Reservoir {
 public:
  Reservoir(std::size_t k, std::uint64_t seed) : k_(k), rng_(seed) {}

  void offer(T item) {
    ++seen_;
    if (items_.size() < k_) {
      items_.push_back(std::move(item));
      return;
    }
    const std::uint64_t slot = rng_.below(seen_);
    if (slot < k_) items_[static_cast<std::size_t>(slot)] = std::move(item);
  }

  std::uint64_t seen() const { return seen_; }
  std::vector<T>& items() { return items_; }
  const std::vector<T>& items() const { return items_; }

 private:
  std::size_t k_;
  Rng rng_;
  std::uint64_t seen_ = 0;
  std::vector<T> items_;
};

std::vector<std::size_t> reservoir_sample_indices(std::size_t stream_len,
                                                  std::size_t k,
                                                  std::uint64_t seed);

// Synthetic minority points: x + u * (nn - x) for a random minority x, one of
// its k nearest minority neighbors nn (Euclidean), and u uniform in [0, 1).
// A single minority point degenerates to duplication.
std::vector<std::vector<double>> smote(
    const std::vector<std::vector<double>>& minority, int k_neighbors,
    int n_synthetic, std::uint64_t seed);

struct SampleSet {
  std::vector<LabeledPoint> train;  // post-SMOTE; classes balanced
  std::vector<PairExample> test;    // raw holdout
  std::uint64_t seed = 0;
};

struct SampleParams {
  int ell = 1;
  int sample_size = 60;       // raw draw target per sub-sample (both classes)
  double holdout_frac = 0.3;  // test fraction, stratified per class
  int smote_k = 5;
  std::uint64_t seed = 0;
};

// Draws ell balanced sub-samples in one pass over the pair stream: per
// sub-sample reservoirs of ~sample_size/2 positives and negatives, a
// stratified train/test split, then SMOTE on the training minority only.
// Throws SamplingError when a class has fewer than 2 raw examples.
std::vector<SampleSet> build_balanced_samples(const PairSource& source,
                                              const SampleParams& p);

struct EvalResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

EvalResult eval_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                            std::int64_t fn);

// Majority-vote predictions over the test pairs; voting ties resolve to
// non-identical.
EvalResult evaluate(const Forest& forest, const std::vector<PairExample>& test);

}  // namespace dkbench
