#include <cmath>

#include "common.hpp"

namespace sarcasm::kernels {

double log1p_exp_neg(double margin) {
  if (margin > 0.0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace reference {

LossGrad logistic(const LabeledMatrix& data, std::span<const double> w, double b,
                  double l2) {
  detail::check_dims(data, w);
  LossGrad out;
  out.grad_w.assign(w.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    detail::logistic_row(data, i, w, b, out.loss, out.grad_w, out.grad_b);
  }
  detail::finish(out, w, l2, data.size());
  return out;
}

LossGrad hinge(const LabeledMatrix& data, std::span<const double> w, double b,
               double lambda) {
  detail::check_dims(data, w);
  LossGrad out;
  out.grad_w.assign(w.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    detail::hinge_row(data, i, w, b, out.loss, out.grad_w, out.grad_b);
  }
  detail::finish(out, w, lambda, data.size());
  return out;
}

std::vector<double> linear_scores(const Matrix& x, std::span<const double> w,
                                  double b) {
  std::vector<double> scores(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) scores[i] = detail::dot(w, x.row(i)) + b;
  return scores;
}

Matrix pool_sentences(std::span<const TokenSeq> sentences,
                      const EmbeddingTable& table, EmbedStats* stats) {
  Matrix out(sentences.size(), table.dim());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto pooled = embed_sentence(sentences[i], table, stats);
    std::copy(pooled.begin(), pooled.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace reference
}  // namespace sarcasm::kernels
