#include "sarcasm/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sarcasm {

namespace {

// Weighted Gini impurity scaled by node size: n * sum_k (n_k/n) gini_k.
double split_cost(double pos_l, double neg_l, double pos_r, double neg_r) {
  const double nl = pos_l + neg_l;
  const double nr = pos_r + neg_r;
  return (nl - (pos_l * pos_l + neg_l * neg_l) / nl) +
         (nr - (pos_r * pos_r + neg_r * neg_r) / nr);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double cost = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledMatrix& data, const ForestConfig& cfg, Rng& rng)
      : data_(data), cfg_(cfg), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> sample) {
    tree_.nodes.clear();
    grow(std::move(sample), 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> sample, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    TreeNode node;
    for (auto i : sample) {
      if (data_.labels[i] == Label::Sarcasm) {
        ++node.positives;
      } else {
        ++node.negatives;
      }
    }

    const bool pure = node.positives == 0 || node.negatives == 0;
    const bool depth_done = cfg_.max_depth > 0 && depth >= cfg_.max_depth;
    const bool too_small = sample.size() < 2 * static_cast<std::size_t>(cfg_.min_leaf);
    if (!pure && !depth_done && !too_small) {
      auto split = best_split(sample, node);
      if (split.feature >= 0) {
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto i : sample) {
          if (data_.features(i, split.feature) <= split.threshold) {
            left.push_back(i);
          } else {
            right.push_back(i);
          }
        }
        sample.clear();
        sample.shrink_to_fit();
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = grow(std::move(left), depth + 1);
        node.right = grow(std::move(right), depth + 1);
      }
    }
    tree_.nodes[index] = node;
    return index;
  }

  Split best_split(const std::vector<std::size_t>& sample, const TreeNode& node) {
    const std::size_t d = data_.dim();
    const double pos = node.positives;
    const double neg = node.negatives;
    const double n = pos + neg;
    const double parent_cost = n - (pos * pos + neg * neg) / n;
    const std::size_t min_leaf = static_cast<std::size_t>(cfg_.min_leaf);

    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), std::size_t{0});

    Split best;
    best.cost = parent_cost;
    std::vector<std::pair<double, bool>> column(sample.size());
    std::size_t visited = 0;
    for (std::size_t remaining = d; remaining > 0; --remaining) {
      if (visited >= static_cast<std::size_t>(cfg_.mtry) && best.feature >= 0) break;
      // Partial Fisher-Yates: pick the next feature without replacement.
      std::swap(features[remaining - 1], features[rng_.below(remaining)]);
      const std::size_t f = features[remaining - 1];
      ++visited;

      for (std::size_t k = 0; k < sample.size(); ++k) {
        column[k] = {data_.features(sample[k], f),
                     data_.labels[sample[k]] == Label::Sarcasm};
      }
      std::sort(column.begin(), column.end());
      double pos_l = 0.0;
      double neg_l = 0.0;
      for (std::size_t k = 0; k + 1 < column.size(); ++k) {
        if (column[k].second) {
          pos_l += 1.0;
        } else {
          neg_l += 1.0;
        }
        const double lo = column[k].first;
        const double hi = column[k + 1].first;
        if (!(lo < hi)) continue;
        if (k + 1 < min_leaf || column.size() - (k + 1) < min_leaf) continue;
        const double cost = split_cost(pos_l, neg_l, pos - pos_l, neg - neg_l);
        if (cost < best.cost - 1e-12) {
          double threshold = (lo + hi) / 2.0;
          if (!std::isfinite(threshold)) threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<int>(f), threshold, cost};
        }
      }
    }
    return best;
  }

  const LabeledMatrix& data_;
  const ForestConfig& cfg_;
  Rng& rng_;
  DecisionTree tree_;
};

DecisionTree grow_one(const LabeledMatrix& data, const ForestConfig& cfg, int t) {
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
  const std::size_t n = data.size();
  std::vector<std::size_t> sample(n);
  if (cfg.bootstrap) {
    for (auto& i : sample) i = rng.below(n);
  } else {
    std::iota(sample.begin(), sample.end(), std::size_t{0});
  }
  return TreeBuilder(data, cfg, rng).build(std::move(sample));
}

}  // namespace

const TreeNode& DecisionTree::leaf_for(std::span<const double> x) const {
  const TreeNode* node = &nodes.at(0);
  while (!node->is_leaf()) {
    node = &nodes[x[node->feature] <= node->threshold ? node->left : node->right];
  }
  return *node;
}

Label DecisionTree::predict(std::span<const double> x) const {
  const auto& leaf = leaf_for(x);
  return leaf.positives > leaf.negatives ? Label::Sarcasm : Label::NotSarcasm;
}

ForestConfig resolve_forest_config(ForestConfig cfg, std::size_t d) {
  if (cfg.n_trees < 1) throw ValidationError("n_trees must be >= 1");
  if (cfg.max_depth < 0) throw ValidationError("max_depth must be >= 0");
  if (cfg.min_leaf < 1) throw ValidationError("min_leaf must be >= 1");
  if (cfg.mtry == 0) {
    cfg.mtry = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(d)))));
  }
  if (cfg.mtry < 1 || static_cast<std::size_t>(cfg.mtry) > d) {
    throw ValidationError("mtry must be in [1, " + std::to_string(d) + "]");
  }
  return cfg;
}

DecisionTree grow_tree(const LabeledMatrix& data, std::span<const std::size_t> sample,
                       const ForestConfig& cfg, Rng& rng) {
  auto resolved = resolve_forest_config(cfg, data.dim());
  return TreeBuilder(data, resolved, rng)
      .build(std::vector<std::size_t>(sample.begin(), sample.end()));
}

ForestParams fit_random_forest_unchecked(const LabeledMatrix& data,
                                         const ForestConfig& cfg) {
  validate_training_data(data, false);
  const auto resolved = resolve_forest_config(cfg, data.dim());
  ForestParams forest;
  forest.trees.resize(static_cast<std::size_t>(resolved.n_trees));
  const int n_trees = resolved.n_trees;
  if (resolved.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n_trees; ++t) forest.trees[t] = grow_one(data, resolved, t);
  } else {
    for (int t = 0; t < n_trees; ++t) forest.trees[t] = grow_one(data, resolved, t);
  }
  return forest;
}

ForestParams fit_random_forest(const LabeledMatrix& data, const ForestConfig& cfg) {
  validate_training_data(data, true);
  return fit_random_forest_unchecked(data, cfg);
}

ForestPrediction predict_random_forest(const ForestParams& forest,
                                       std::span<const double> x) {
  std::size_t votes = 0;
  for (const auto& tree : forest.trees) {
    if (tree.predict(x) == Label::Sarcasm) ++votes;
  }
  ForestPrediction out;
  const std::size_t total = forest.trees.size();
  out.vote_fraction = total == 0 ? 0.0 : static_cast<double>(votes) / total;
  out.label = 2 * votes > total ? Label::Sarcasm : Label::NotSarcasm;
  return out;
}

}  // namespace sarcasm
