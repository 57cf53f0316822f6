#pragma once

// Data-parallel inner loops. Each kernel has a plain serial version in
// `reference` and an OpenMP version in `parallel`. The parallel reductions
// sum fixed-size row blocks and combine them in block order, so their output
// does not depend on the thread count; it can differ from the reference only
// by floating-point reassociation.

#include <span>
#include <vector>

#include "sarcasm/embeddings.hpp"
#include "sarcasm/matrix.hpp"

namespace sarcasm::kernels {

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};

// Rows per reduction block in the parallel kernels.
inline constexpr std::size_t kBlockRows = 64;

namespace reference {

// mean log(1 + exp(-y (w.x + b))) + (l2/2)|w|^2 and its gradient.
LossGrad logistic(const LabeledMatrix& data, std::span<const double> w, double b,
                  double l2);

// (lambda/2)|w|^2 + mean max(0, 1 - y (w.x + b)) and a subgradient
// (zero at margin exactly 1).
LossGrad hinge(const LabeledMatrix& data, std::span<const double> w, double b,
               double lambda);

std::vector<double> linear_scores(const Matrix& x, std::span<const double> w,
                                  double b);

// One mean-pooled row per sentence.
Matrix pool_sentences(std::span<const TokenSeq> sentences,
                      const EmbeddingTable& table, EmbedStats* stats = nullptr);

}  // namespace reference

namespace parallel {

LossGrad logistic(const LabeledMatrix& data, std::span<const double> w, double b,
                  double l2);
LossGrad hinge(const LabeledMatrix& data, std::span<const double> w, double b,
               double lambda);
std::vector<double> linear_scores(const Matrix& x, std::span<const double> w,
                                  double b);
Matrix pool_sentences(std::span<const TokenSeq> sentences,
                      const EmbeddingTable& table, EmbedStats* stats = nullptr);

}  // namespace parallel

// Numerically stable log(1 + exp(-margin)).
double log1p_exp_neg(double margin);
double sigmoid(double z);

void set_num_threads(int threads);
int max_threads();

}  // namespace sarcasm::kernels
