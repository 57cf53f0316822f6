#include "sarcasm/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sarcasm {

namespace {

std::size_t class_index(Label label) { return label == Label::Sarcasm ? 1 : 0; }

}  // namespace

GaussianNbParams fit_gaussian_nb(const LabeledMatrix& data) {
  validate_training_data(data, true);
  const std::size_t d = data.dim();
  const std::size_t n = data.size();

  GaussianNbParams params;
  std::array<std::size_t, 2> count{};
  for (std::size_t c = 0; c < 2; ++c) {
    params.mean[c].assign(d, 0.0);
    params.var[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = class_index(data.labels[i]);
    ++count[c];
    auto x = data.features.row(i);
    for (std::size_t j = 0; j < d; ++j) params.mean[c][j] += x[j];
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (auto& m : params.mean[c]) m /= static_cast<double>(count[c]);
    params.prior[c] = static_cast<double>(count[c]) / static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = class_index(data.labels[i]);
    auto x = data.features.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x[j] - params.mean[c][j];
      params.var[c][j] += diff * diff;
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (auto& v : params.var[c]) v /= static_cast<double>(count[c]);
  }

  // Largest variance of any feature over all rows.
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += data.features(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = data.features(i, j) - mean;
      var += diff * diff;
    }
    max_var = std::max(max_var, var / static_cast<double>(n));
  }
  // All-constant data would otherwise leave zero variances.
  params.epsilon = max_var > 0.0 ? kVarSmoothing * max_var : kVarSmoothing;
  for (std::size_t c = 0; c < 2; ++c) {
    for (auto& v : params.var[c]) v += params.epsilon;
  }
  return params;
}

GnbPrediction predict_gaussian_nb(const GaussianNbParams& params,
                                  std::span<const double> x) {
  const std::size_t d = params.mean[0].size();
  if (x.size() != d) {
    throw ValidationError("expected d=" + std::to_string(d) + ", got " +
                          std::to_string(x.size()));
  }
  GnbPrediction out;
  for (std::size_t c = 0; c < 2; ++c) {
    double lp = std::log(params.prior[c]);
    for (std::size_t j = 0; j < d; ++j) {
      const double var = params.var[c][j];
      const double diff = x[j] - params.mean[c][j];
      lp -= 0.5 * std::log(2.0 * std::numbers::pi * var) + diff * diff / (2.0 * var);
    }
    out.log_posterior[c] = lp;
  }
  out.label = out.log_posterior[1] > out.log_posterior[0] ? Label::Sarcasm
                                                          : Label::NotSarcasm;
  return out;
}

}  // namespace sarcasm
