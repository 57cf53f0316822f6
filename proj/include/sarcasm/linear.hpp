#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sarcasm/matrix.hpp"

namespace sarcasm {

struct LinearParams {
  std::vector<double> w;
  double b = 0.0;

  double score(std::span<const double> x) const;
  bool operator==(const LinearParams&) const = default;
};

struct LrConfig {
  double lr0 = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  double tol = 1e-6;
  std::uint64_t seed = 42;
};

struct LsvcConfig {
  double lambda = 1e-4;
  int epochs = 50;
  // Initial step of the decaying schedule eta0 / (1 + eta0 * lambda * t).
  double eta0 = 0.01;
  std::uint64_t seed = 42;
};

// Full-batch objective value per iteration, for convergence diagnostics.
struct FitTrace {
  std::vector<double> objective;
  int iterations = 0;
};

// Full-batch gradient descent on the L2-regularized mean log-loss, starting
// from zero with step lr0 / (1 + epoch); the L2 term is applied as a
// proximal shrink. Stops early once the full gradient's infinity norm drops
// below tol.
LinearParams fit_logistic(const LabeledMatrix& data, const LrConfig& cfg,
                          FitTrace* trace = nullptr);

// Stochastic subgradient descent on the L2-regularized mean hinge loss, one
// seeded shuffle per epoch. The bias is not regularized.
LinearParams fit_linear_svc(const LabeledMatrix& data, const LsvcConfig& cfg,
                            FitTrace* trace = nullptr);

double logistic_objective(const LabeledMatrix& data, const LinearParams& params,
                          double l2);
double hinge_objective(const LabeledMatrix& data, const LinearParams& params,
                       double lambda);

}  // namespace sarcasm
