#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sarcasm/matrix.hpp"
#include "sarcasm/rng.hpp"

namespace sarcasm {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::uint32_t negatives = 0;
  std::uint32_t positives = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Nodes in creation order; node 0 is the root. x[feature] <= threshold goes
// left.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf_for(std::span<const double> x) const;
  Label predict(std::span<const double> x) const;
  bool operator==(const DecisionTree&) const = default;
};

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 0;  // 0 = unbounded
  int min_leaf = 1;
  int mtry = 0;       // 0 = floor(sqrt(d))
  std::uint64_t seed = 42;
  bool bootstrap = true;
  bool parallel = true;
};

struct ForestParams {
  std::vector<DecisionTree> trees;
  bool operator==(const ForestParams&) const = default;
};

struct ForestPrediction {
  Label label = Label::NotSarcasm;
  double vote_fraction = 0.0;  // share of trees voting SARCASM
};

// Resolves mtry and validates bounds against dimension d.
ForestConfig resolve_forest_config(ForestConfig cfg, std::size_t d);

// CART with Gini impurity on data rows `sample` (duplicates allowed). At each
// node features are drawn without replacement until at least mtry have been
// examined and a split reducing impurity has been found. Candidate
// thresholds are midpoints between consecutive distinct values.
DecisionTree grow_tree(const LabeledMatrix& data, std::span<const std::size_t> sample,
                       const ForestConfig& cfg, Rng& rng);

// Tree t draws its bootstrap sample and feature order from an Rng seeded by
// derive_seed(cfg.seed, t), so parallel and serial growth agree exactly.
ForestParams fit_random_forest(const LabeledMatrix& data, const ForestConfig& cfg);

// Same as fit_random_forest but accepts single-class data.
ForestParams fit_random_forest_unchecked(const LabeledMatrix& data,
                                         const ForestConfig& cfg);

ForestPrediction predict_random_forest(const ForestParams& forest,
                                       std::span<const double> x);

}  // namespace sarcasm
