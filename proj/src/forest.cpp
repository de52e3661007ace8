#include "dkbench/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dkbench/errors.hpp"
#include "dkbench/rng.hpp"

namespace dkbench {

double gini_impurity(std::int64_t n_pos, std::int64_t n_neg) {
  const std::int64_t total = n_pos + n_neg;
  if (total == 0) return 0.0;
  const double p = static_cast<double>(n_pos) / static_cast<double>(total);
  const double q = static_cast<double>(n_neg) / static_cast<double>(total);
  return 1.0 - p * p - q * q;
}

bool DecisionTree::predict(const std::vector<double>& x) const {
  int at = 0;
  while (nodes[at].feature >= 0) {
    const TreeNode& n = nodes[at];
    at = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[at].label;
}

int Forest::positive_votes(const std::vector<double>& x) const {
  int votes = 0;
  for (const auto& t : trees) {
    if (t.predict(x)) ++votes;
  }
  return votes;
}

bool Forest::predict(const std::vector<double>& x) const {
  return 2 * positive_votes(x) > static_cast<int>(trees.size());
}

namespace {

struct TreeBuilder {
  const std::vector<LabeledPoint>& data;
  int n_features;
  int mtry;
  int min_leaf;
  Rng& rng;
  std::vector<TreeNode> nodes;
  std::vector<int> feature_pool;  // reused for per-split feature sampling

  TreeBuilder(const std::vector<LabeledPoint>& d, int min_leaf_, Rng& r)
      : data(d),
        n_features(static_cast<int>(d.front().x.size())),
        mtry(std::max(1, static_cast<int>(
                             std::ceil(std::sqrt(static_cast<double>(
                                 d.front().x.size())))))),
        min_leaf(min_leaf_),
        rng(r),
        feature_pool(static_cast<std::size_t>(n_features)) {
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
  }

  int make_leaf(std::int64_t pos, std::int64_t neg) {
    TreeNode leaf;
    leaf.label = pos > neg;  // ties fall to negative
    nodes.push_back(leaf);
    return static_cast<int>(nodes.size()) - 1;
  }

  int build(std::vector<int>& idxs) {
    std::int64_t pos = 0;
    for (int i : idxs) pos += data[i].positive ? 1 : 0;
    const std::int64_t total = static_cast<std::int64_t>(idxs.size());
    const std::int64_t neg = total - pos;
    if (pos == 0 || neg == 0 || total < 2 * min_leaf) {
      return make_leaf(pos, neg);
    }

    const double parent = gini_impurity(pos, neg);
    double best_decrease = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;

    // sample mtry distinct features
    for (int k = 0; k < mtry; ++k) {
      const std::size_t j =
          k + rng.index(static_cast<std::size_t>(n_features - k));
      std::swap(feature_pool[k], feature_pool[j]);
    }

    std::vector<int> order(idxs);
    for (int k = 0; k < mtry; ++k) {
      const int f = feature_pool[k];
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = data[a].x[f];
        const double vb = data[b].x[f];
        if (va != vb) return va < vb;
        return a < b;
      });
      std::int64_t lp = 0, ln = 0;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (data[order[i]].positive) {
          ++lp;
        } else {
          ++ln;
        }
        const double v = data[order[i]].x[f];
        const double vnext = data[order[i + 1]].x[f];
        if (v == vnext) continue;
        const std::int64_t left = lp + ln;
        const std::int64_t right = total - left;
        if (left < min_leaf || right < min_leaf) continue;
        const double weighted =
            (static_cast<double>(left) * gini_impurity(lp, ln) +
             static_cast<double>(right) * gini_impurity(pos - lp, neg - ln)) /
            static_cast<double>(total);
        const double decrease = parent - weighted;
        if (decrease > best_decrease) {
          best_decrease = decrease;
          best_feature = f;
          best_threshold = v + (vnext - v) / 2.0;
        }
      }
    }

    if (best_feature < 0) {
      return make_leaf(pos, neg);
    }

    std::vector<int> left_idx, right_idx;
    left_idx.reserve(idxs.size());
    right_idx.reserve(idxs.size());
    for (int i : idxs) {
      (data[i].x[best_feature] <= best_threshold ? left_idx : right_idx)
          .push_back(i);
    }
    TreeNode node;
    node.feature = best_feature;
    node.threshold = best_threshold;
    nodes.push_back(node);
    const int at = static_cast<int>(nodes.size()) - 1;
    const int left_child = build(left_idx);
    const int right_child = build(right_idx);
    nodes[at].left = left_child;
    nodes[at].right = right_child;
    return at;
  }
};

}  // namespace

Forest train_forest(const std::vector<LabeledPoint>& train,
                    const ForestParams& p) {
  if (train.empty()) throw TrainingError("empty training set");
  std::int64_t pos = 0;
  for (const auto& pt : train) pos += pt.positive ? 1 : 0;
  if (pos == 0 || pos == static_cast<std::int64_t>(train.size())) {
    throw TrainingError("training set contains a single class");
  }
  if (p.n_trees < 1) throw ParamError("n_trees must be >= 1");

  Forest forest;
  forest.trees.reserve(p.n_trees);
  const std::size_t n = train.size();
  for (int t = 0; t < p.n_trees; ++t) {
    Rng rng(derive_seed(p.seed, "tree", static_cast<std::uint64_t>(t)));
    std::vector<int> bootstrap(n);
    for (std::size_t i = 0; i < n; ++i) {
      bootstrap[i] = static_cast<int>(rng.index(n));
    }
    TreeBuilder builder(train, std::max(1, p.min_leaf), rng);
    builder.build(bootstrap);  // root lands at node 0
    DecisionTree tree;
    tree.nodes = std::move(builder.nodes);
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

}  // namespace dkbench
