#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sarcasm/kernels.hpp"

namespace sarcasm {
namespace {

namespace ref = kernels::reference;
namespace par = kernels::parallel;

LabeledMatrix random_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> value(0.0, 1.0);
  LabeledMatrix data;
  data.features = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) data.features(i, j) = value(gen);
    data.labels.push_back(gen() % 2 ? Label::Sarcasm : Label::NotSarcasm);
  }
  return data;
}

std::vector<double> random_vector(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> value(0.0, 0.5);
  std::vector<double> w(d);
  for (auto& x : w) x = value(gen);
  return w;
}

void expect_close(const kernels::LossGrad& a, const kernels::LossGrad& b) {
  EXPECT_NEAR(a.loss, b.loss, 1e-12 * std::max(1.0, std::abs(a.loss)));
  EXPECT_NEAR(a.grad_b, b.grad_b, 1e-12);
  ASSERT_EQ(a.grad_w.size(), b.grad_w.size());
  for (std::size_t j = 0; j < a.grad_w.size(); ++j) EXPECT_NEAR(a.grad_w[j], b.grad_w[j], 1e-12);
}

void expect_identical(const kernels::LossGrad& a, const kernels::LossGrad& b) {
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.grad_b, b.grad_b);
  EXPECT_EQ(a.grad_w, b.grad_w);
}

class ThreadCountGuard {
 public:
  ThreadCountGuard() : saved_(kernels::max_threads()) {}
  ~ThreadCountGuard() { kernels::set_num_threads(saved_); }

 private:
  int saved_;
};

TEST(Kernels, StableLogistic) {
  EXPECT_NEAR(kernels::log1p_exp_neg(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(kernels::log1p_exp_neg(800.0), 0.0, 1e-300);
  EXPECT_NEAR(kernels::log1p_exp_neg(-800.0), 800.0, 1e-9);
  EXPECT_DOUBLE_EQ(kernels::sigmoid(0.0), 0.5);
  EXPECT_GE(kernels::sigmoid(-800.0), 0.0);
  EXPECT_DOUBLE_EQ(kernels::sigmoid(800.0), 1.0);
}

TEST(Kernels, ParallelMatchesReference) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 1000u}) {
    auto data = random_data(n, 9, n);
    auto w = random_vector(9, n + 1);
    expect_close(par::logistic(data, w, 0.3, 1e-3), ref::logistic(data, w, 0.3, 1e-3));
    expect_close(par::hinge(data, w, -0.2, 1e-3), ref::hinge(data, w, -0.2, 1e-3));
    auto a = par::linear_scores(data.features, w, 0.1);
    auto b = ref::linear_scores(data.features, w, 0.1);
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, ParallelIsIndependentOfThreadCount) {
  ThreadCountGuard guard;
  auto data = random_data(777, 13, 5);
  auto w = random_vector(13, 6);
  kernels::set_num_threads(1);
  auto lg1 = par::logistic(data, w, 0.1, 1e-4);
  auto hg1 = par::hinge(data, w, 0.1, 1e-4);
  for (int threads : {2, 3, 8}) {
    kernels::set_num_threads(threads);
    expect_identical(par::logistic(data, w, 0.1, 1e-4), lg1);
    expect_identical(par::hinge(data, w, 0.1, 1e-4), hg1);
  }
}

TEST(Kernels, HingeSubgradientZeroAtMarginOne) {
  LabeledMatrix data;
  data.features = Matrix(1, 1);
  data.features(0, 0) = 1.0;
  data.labels = {Label::Sarcasm};
  std::vector<double> w{1.0};
  auto lg = ref::hinge(data, w, 0.0, 0.0);
  EXPECT_EQ(lg.loss, 0.0);
  EXPECT_EQ(lg.grad_w[0], 0.0);
  EXPECT_EQ(lg.grad_b, 0.0);
}

TEST(Kernels, HingeObjectiveIsRegularizerWhenAllMarginsExceedOne) {
  LabeledMatrix data;
  data.features = Matrix(2, 1);
  data.features(0, 0) = 2.0;
  data.features(1, 0) = -2.0;
  data.labels = {Label::Sarcasm, Label::NotSarcasm};
  std::vector<double> w{3.0};
  EXPECT_DOUBLE_EQ(ref::hinge(data, w, 0.0, 0.5).loss, 0.5 / 2 * 9.0);
}

TEST(Kernels, PoolSentencesAgree) {
  EmbeddingTable table(3);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<float> value(-1, 1);
  for (int i = 0; i < 20; ++i) {
    std::vector<float> v{value(gen), value(gen), value(gen)};
    table.insert("t" + std::to_string(i), v);
  }
  std::vector<TokenSeq> sentences(300);
  for (auto& s : sentences) {
    s.resize(gen() % 7);
    for (auto& t : s) t = "t" + std::to_string(gen() % 25);
  }
  EmbedStats ra, pa;
  auto r = ref::pool_sentences(sentences, table, &ra);
  auto p = par::pool_sentences(sentences, table, &pa);
  ASSERT_EQ(r.rows(), p.rows());
  EXPECT_TRUE(std::equal(r.data().begin(), r.data().end(), p.data().begin()));
  EXPECT_EQ(ra.all_oov, pa.all_oov);
  EXPECT_EQ(ra.tokens, pa.tokens);
  EXPECT_EQ(ra.oov_tokens, pa.oov_tokens);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto single = embed_sentence(sentences[i], table);
    EXPECT_TRUE(std::equal(single.begin(), single.end(), r.row(i).begin()));
  }
}

}  // namespace
}  // namespace sarcasm
