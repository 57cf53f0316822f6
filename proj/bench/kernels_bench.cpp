// Serial reference vs OpenMP kernels, plus serial vs parallel forest growth.

#include <benchmark/benchmark.h>

#include <random>

#include "sarcasm/forest.hpp"
#include "sarcasm/kernels.hpp"

namespace {

using namespace sarcasm;

LabeledMatrix random_data(std::size_t n, std::size_t d) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> value(0.0, 1.0);
  LabeledMatrix data;
  data.features = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) s += data.features(i, j) = value(gen);
    data.labels.push_back(s > 0 ? Label::Sarcasm : Label::NotSarcasm);
  }
  return data;
}

std::vector<double> weights(std::size_t d) {
  std::vector<double> w(d);
  for (std::size_t j = 0; j < d; ++j) w[j] = 0.01 * static_cast<double>(j % 7) - 0.03;
  return w;
}

template <auto Kernel>
void BM_Loss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_data(n, 400);
  const auto w = weights(400);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(data, w, 0.1, 1e-4));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void BM_Scores(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_data(n, 400);
  const auto w = weights(400);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(data.features, w, 0.1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

struct PoolInput {
  EmbeddingTable table{200};
  std::vector<TokenSeq> sentences;
};

const PoolInput& pool_input() {
  static const PoolInput input = [] {
    PoolInput in;
    std::mt19937_64 gen(2);
    std::normal_distribution<float> value(0.0f, 1.0f);
    std::vector<float> v(200);
    for (int i = 0; i < 20000; ++i) {
      for (auto& x : v) x = value(gen);
      in.table.insert("w" + std::to_string(i), v);
    }
    in.sentences.resize(10000);
    for (auto& s : in.sentences) {
      s.resize(5 + gen() % 30);
      for (auto& t : s) t = "w" + std::to_string(gen() % 25000);
    }
    return in;
  }();
  return input;
}

template <auto Kernel>
void BM_Pool(benchmark::State& state) {
  const auto& in = pool_input();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in.sentences, in.table, nullptr));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(in.sentences.size()));
}

void BM_Forest(benchmark::State& state) {
  const auto data = random_data(2000, 64);
  ForestConfig cfg;
  cfg.n_trees = 32;
  cfg.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(fit_random_forest(data, cfg));
}

BENCHMARK(BM_Loss<kernels::reference::logistic>)->Name("logistic/reference")->Arg(5000);
BENCHMARK(BM_Loss<kernels::parallel::logistic>)->Name("logistic/parallel")->Arg(5000);
BENCHMARK(BM_Loss<kernels::reference::hinge>)->Name("hinge/reference")->Arg(5000);
BENCHMARK(BM_Loss<kernels::parallel::hinge>)->Name("hinge/parallel")->Arg(5000);
BENCHMARK(BM_Scores<kernels::reference::linear_scores>)->Name("scores/reference")->Arg(5000);
BENCHMARK(BM_Scores<kernels::parallel::linear_scores>)->Name("scores/parallel")->Arg(5000);
BENCHMARK(BM_Pool<kernels::reference::pool_sentences>)->Name("pool/reference");
BENCHMARK(BM_Pool<kernels::parallel::pool_sentences>)->Name("pool/parallel");
BENCHMARK(BM_Forest)->Name("forest/serial")->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forest)->Name("forest/parallel")->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
