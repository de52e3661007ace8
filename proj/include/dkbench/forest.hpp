#pragma once

#include <cstdint>
#include <vector>

namespace dkbench {

struct LabeledPoint {
  std::vector<double> x;
  bool positive = false;
};

// 1 - sum of squared class proportions.
double gini_impurity(std::int64_t n_pos, std::int64_t n_neg);

struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;  // left branch takes x[feature] <= threshold
  int left = -1;
  int right = -1;
  bool label = false;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  bool predict(const std::vector<double>& x) const;
};

struct ForestParams {
  int n_trees = 100;
  int min_leaf = 1;
  std::uint64_t seed = 0;
};

struct Forest {
  std::vector<DecisionTree> trees;
  int positive_votes(const std::vector<double>& x) const;
  // Majority vote; exact ties resolve to negative.
  bool predict(const std::vector<double>& x) const;
};

// Bagged CART trees: each tree fits a bootstrap resample, considers
// ceil(sqrt(d)) random features per split, picks the threshold maximizing the
// Gini impurity decrease, and grows until nodes are pure or below min_leaf.
// Throws TrainingError when the training set has a single class.
Forest train_forest(const std::vector<LabeledPoint>& train,
                    const ForestParams& p);

}  // namespace dkbench
