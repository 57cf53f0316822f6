#pragma once

#include <array>
#include <span>
#include <vector>

#include "sarcasm/matrix.hpp"

namespace sarcasm {

// Class index 0 is NOT_SARCASM, 1 is SARCASM.
struct GaussianNbParams {
  std::array<double, 2> prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> var;
  double epsilon = 0.0;

  bool operator==(const GaussianNbParams&) const = default;
};

struct GnbPrediction {
  Label label = Label::NotSarcasm;
  // Unnormalized log posteriors: log prior + sum of log densities.
  std::array<double, 2> log_posterior{};
};

inline constexpr double kVarSmoothing = 1e-9;

// Per-class frequency priors and per-feature population variances, each
// increased by kVarSmoothing times the largest feature variance.
GaussianNbParams fit_gaussian_nb(const LabeledMatrix& data);

GnbPrediction predict_gaussian_nb(const GaussianNbParams& params,
                                  std::span<const double> x);

}  // namespace sarcasm
