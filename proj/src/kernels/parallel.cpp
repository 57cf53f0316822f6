#include <omp.h>

#include "common.hpp"

namespace sarcasm::kernels {

void set_num_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

namespace parallel {

namespace {

using RowFn = void (*)(const LabeledMatrix&, std::size_t, std::span<const double>,
                       double, double&, std::span<double>, double&);

// Per-block partial sums laid out as [loss, grad_b, grad_w...].
LossGrad blocked_reduce(const LabeledMatrix& data, std::span<const double> w,
                        double b, double reg, RowFn row_fn) {
  detail::check_dims(data, w);
  const std::size_t n = data.size();
  const std::size_t d = w.size();
  const std::size_t blocks = (n + kBlockRows - 1) / kBlockRows;
  const std::size_t stride = d + 2;
  std::vector<double> partial(blocks * stride, 0.0);

#pragma omp parallel for schedule(static)
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    double* acc = partial.data() + blk * stride;
    std::span<double> gw(acc + 2, d);
    const std::size_t end = std::min(n, (blk + 1) * kBlockRows);
    for (std::size_t i = blk * kBlockRows; i < end; ++i) {
      row_fn(data, i, w, b, acc[0], gw, acc[1]);
    }
  }

  LossGrad out;
  out.grad_w.assign(d, 0.0);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const double* acc = partial.data() + blk * stride;
    out.loss += acc[0];
    out.grad_b += acc[1];
    for (std::size_t j = 0; j < d; ++j) out.grad_w[j] += acc[j + 2];
  }
  detail::finish(out, w, reg, n);
  return out;
}

}  // namespace

LossGrad logistic(const LabeledMatrix& data, std::span<const double> w, double b,
                  double l2) {
  return blocked_reduce(data, w, b, l2, &detail::logistic_row);
}

LossGrad hinge(const LabeledMatrix& data, std::span<const double> w, double b,
               double lambda) {
  return blocked_reduce(data, w, b, lambda, &detail::hinge_row);
}

std::vector<double> linear_scores(const Matrix& x, std::span<const double> w,
                                  double b) {
  std::vector<double> scores(x.rows());
  const auto rows = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    scores[i] = detail::dot(w, x.row(i)) + b;
  }
  return scores;
}

Matrix pool_sentences(std::span<const TokenSeq> sentences,
                      const EmbeddingTable& table, EmbedStats* stats) {
  Matrix out(sentences.size(), table.dim());
  std::vector<EmbedStats> per_row(sentences.size());
  const auto rows = static_cast<std::ptrdiff_t>(sentences.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    auto pooled = embed_sentence(sentences[i], table, &per_row[i]);
    std::copy(pooled.begin(), pooled.end(), out.row(i).begin());
  }
  if (stats != nullptr) {
    for (const auto& s : per_row) *stats += s;
  }
  return out;
}

}  // namespace parallel
}  // namespace sarcasm::kernels
