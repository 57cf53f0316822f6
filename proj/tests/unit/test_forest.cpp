#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sarcasm/error.hpp"
#include "sarcasm/forest.hpp"

namespace sarcasm {
namespace {

constexpr auto S = Label::Sarcasm;
constexpr auto N = Label::NotSarcasm;

LabeledMatrix random_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> value(0.0, 1.0);
  LabeledMatrix data;
  data.features = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) s += data.features(i, j) = value(gen);
    data.labels.push_back(s + 0.5 * value(gen) > 0 ? S : N);
  }
  return data;
}

TEST(Forest, PureDataPredictsThatClass) {
  LabeledMatrix data;
  data.features = Matrix(5, 2);
  for (std::size_t i = 0; i < 5; ++i) data.features(i, 0) = static_cast<double>(i);
  data.labels.assign(5, S);
  ForestConfig cfg;
  cfg.n_trees = 5;
  auto forest = fit_random_forest_unchecked(data, cfg);
  for (const auto& tree : forest.trees) EXPECT_EQ(tree.nodes.size(), 1u);
  auto p = predict_random_forest(forest, std::vector<double>{100.0, -3.0});
  EXPECT_EQ(p.label, S);
  EXPECT_EQ(p.vote_fraction, 1.0);
  EXPECT_THROW(fit_random_forest(data, cfg), ValidationError);
}

TEST(Forest, StumpOnDuplicatedTwoPointData) {
  LabeledMatrix data;
  data.features = Matrix(20, 1);
  for (std::size_t i = 0; i < 20; ++i) {
    data.features(i, 0) = static_cast<double>(i % 2);
    data.labels.push_back(i % 2 ? S : N);
  }
  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.max_depth = 1;
  auto forest = fit_random_forest(data, cfg);
  const auto& root = forest.trees[0].nodes[0];
  ASSERT_FALSE(root.is_leaf());
  EXPECT_GT(root.threshold, 0.0);
  EXPECT_LT(root.threshold, 1.0);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(predict_random_forest(forest, data.features.row(i)).label, data.labels[i]);
  }
}

TEST(Forest, DeterministicAndParallelMatchesSerial) {
  auto data = random_data(200, 6, 1);
  ForestConfig cfg;
  cfg.n_trees = 25;
  auto a = fit_random_forest(data, cfg);
  auto b = fit_random_forest(data, cfg);
  cfg.parallel = false;
  auto serial = fit_random_forest(data, cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, serial);
  auto queries = random_data(50, 6, 2);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    EXPECT_EQ(predict_random_forest(a, queries.features.row(i)).vote_fraction,
              predict_random_forest(b, queries.features.row(i)).vote_fraction);
  }
}

TEST(Forest, DifferentSeedsDiffer) {
  auto data = random_data(200, 6, 1);
  ForestConfig cfg;
  cfg.n_trees = 5;
  auto a = fit_random_forest(data, cfg);
  cfg.seed = 43;
  EXPECT_NE(a, fit_random_forest(data, cfg));
}

TEST(Forest, NoBootstrapSingleTreeEqualsPlainCart) {
  auto data = random_data(120, 4, 8);
  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  auto forest = fit_random_forest(data, cfg);
  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Rng rng(derive_seed(cfg.seed, 0));
  auto tree = grow_tree(data, all, resolve_forest_config(cfg, data.dim()), rng);
  EXPECT_EQ(forest.trees[0], tree);
}

TEST(Forest, UnboundedTreeFitsDistinctPointsExactly) {
  auto data = random_data(80, 3, 12);
  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  auto forest = fit_random_forest(data, cfg);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(forest.trees[0].predict(data.features.row(i)), data.labels[i]);
  }
}

TEST(Forest, StructuralInvariants) {
  auto data = random_data(150, 5, 3);
  ForestConfig cfg;
  cfg.n_trees = 10;
  cfg.max_depth = 4;
  cfg.min_leaf = 3;
  auto forest = fit_random_forest(data, cfg);
  for (const auto& tree : forest.trees) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) {
        EXPECT_GE(node.negatives + node.positives, 3u);
      } else {
        EXPECT_LT(node.feature, 5);
        EXPECT_GT(node.left, 0);
        EXPECT_GT(node.right, 0);
      }
    }
  }
}

TEST(Forest, InvalidConfigRejected) {
  auto data = random_data(20, 2, 3);
  ForestConfig cfg;
  cfg.n_trees = 0;
  EXPECT_THROW(fit_random_forest(data, cfg), ValidationError);
  cfg = {};
  cfg.mtry = 3;
  EXPECT_THROW(fit_random_forest(data, cfg), ValidationError);
  cfg = {};
  cfg.min_leaf = 0;
  EXPECT_THROW(fit_random_forest(data, cfg), ValidationError);
  cfg = {};
  cfg.max_depth = -1;
  EXPECT_THROW(fit_random_forest(data, cfg), ValidationError);
}

TEST(Forest, DefaultMtryIsFloorSqrtD) {
  EXPECT_EQ(resolve_forest_config({}, 400).mtry, 20);
  EXPECT_EQ(resolve_forest_config({}, 3).mtry, 1);
}

TEST(Forest, DepthOneMatchesExhaustiveStump) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + gen() % 29;
    std::vector<double> xs(n);
    std::vector<Label> ys(n);
    std::uniform_int_distribution<int> grid(0, 9);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = trial % 2 ? grid(gen) * 0.5 : std::normal_distribution<double>()(gen);
      ys[i] = gen() % 2 ? S : N;
    }
    LabeledMatrix data;
    data.features = Matrix(n, 1);
    for (std::size_t i = 0; i < n; ++i) data.features(i, 0) = xs[i];
    data.labels = ys;
    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.bootstrap = false;
    cfg.seed = trial;
    auto tree = fit_random_forest_unchecked(data, cfg).trees[0];
    auto stump = oracle::best_stump(xs, ys);
    const auto& root = tree.nodes[0];
    ASSERT_EQ(!root.is_leaf(), stump.split) << "trial " << trial;
    if (!stump.split) continue;
    EXPECT_EQ(root.threshold, stump.threshold) << "trial " << trial;
    EXPECT_EQ(tree.predict(std::vector<double>{stump.threshold}), stump.left);
    EXPECT_EQ(tree.predict(std::vector<double>{stump.threshold + 1e3}), stump.right);
  }
}

}  // namespace
}  // namespace sarcasm
