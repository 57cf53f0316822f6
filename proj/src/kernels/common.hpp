#pragma once

#include <cmath>
#include <span>

#include "sarcasm/kernels.hpp"

namespace sarcasm::kernels::detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline void check_dims(const LabeledMatrix& data, std::span<const double> w) {
  if (w.size() != data.dim()) {
    throw ValidationError("weight vector has " + std::to_string(w.size()) +
                          " components, data has " + std::to_string(data.dim()));
  }
  if (data.labels.size() != data.features.rows()) {
    throw ValidationError("labels and rows are misaligned");
  }
}

// Adds the loss and gradient contribution of row i into the accumulators.
inline void logistic_row(const LabeledMatrix& data, std::size_t i,
                         std::span<const double> w, double b, double& loss,
                         std::span<double> gw, double& gb) {
  auto x = data.features.row(i);
  const double y = sign_of(data.labels[i]);
  const double margin = y * (dot(w, x) + b);
  loss += log1p_exp_neg(margin);
  const double coef = -y * sigmoid(-margin);
  for (std::size_t j = 0; j < x.size(); ++j) gw[j] += coef * x[j];
  gb += coef;
}

inline void hinge_row(const LabeledMatrix& data, std::size_t i,
                      std::span<const double> w, double b, double& loss,
                      std::span<double> gw, double& gb) {
  auto x = data.features.row(i);
  const double y = sign_of(data.labels[i]);
  const double margin = y * (dot(w, x) + b);
  if (margin >= 1.0) return;
  loss += 1.0 - margin;
  for (std::size_t j = 0; j < x.size(); ++j) gw[j] -= y * x[j];
  gb -= y;
}

// Turns summed row contributions into the regularized mean objective.
inline void finish(LossGrad& out, std::span<const double> w, double reg,
                   std::size_t n) {
  const double inv = 1.0 / static_cast<double>(n);
  out.loss *= inv;
  out.grad_b *= inv;
  double sq = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    out.grad_w[j] = out.grad_w[j] * inv + reg * w[j];
    sq += w[j] * w[j];
  }
  out.loss += 0.5 * reg * sq;
}

}  // namespace sarcasm::kernels::detail
