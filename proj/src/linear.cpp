#include "sarcasm/linear.hpp"

#include <algorithm>
#include <cmath>

#include "sarcasm/kernels.hpp"
#include "sarcasm/rng.hpp"

namespace sarcasm {

double LinearParams::score(std::span<const double> x) const {
  if (x.size() != w.size()) {
    throw ValidationError("expected d=" + std::to_string(w.size()) + ", got " +
                          std::to_string(x.size()));
  }
  double s = b;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
  return s;
}

double logistic_objective(const LabeledMatrix& data, const LinearParams& params,
                          double l2) {
  return kernels::parallel::logistic(data, params.w, params.b, l2).loss;
}

double hinge_objective(const LabeledMatrix& data, const LinearParams& params,
                       double lambda) {
  return kernels::parallel::hinge(data, params.w, params.b, lambda).loss;
}

LinearParams fit_logistic(const LabeledMatrix& data, const LrConfig& cfg,
                          FitTrace* trace) {
  validate_training_data(data, true);
  if (!(cfg.lr0 > 0.0)) throw ValidationError("lr0 must be > 0");
  if (cfg.l2 < 0.0) throw ValidationError("l2 must be >= 0");
  if (cfg.epochs < 0) throw ValidationError("epochs must be >= 0");

  LinearParams params;
  params.w.assign(data.dim(), 0.0);
  int epoch = 0;
  for (; epoch < cfg.epochs; ++epoch) {
    auto lg = kernels::parallel::logistic(data, params.w, params.b, cfg.l2);
    if (trace != nullptr) trace->objective.push_back(lg.loss);
    double inf_norm = std::abs(lg.grad_b);
    for (double g : lg.grad_w) inf_norm = std::max(inf_norm, std::abs(g));
    if (inf_norm < cfg.tol) break;

    // Explicit step on the log-loss, implicit (proximal) step on the L2 term,
    // which stays stable however large l2 is relative to the step.
    const double step = cfg.lr0 / (1.0 + epoch);
    const double shrink = 1.0 / (1.0 + step * cfg.l2);
    for (std::size_t j = 0; j < params.w.size(); ++j) {
      const double loss_grad = lg.grad_w[j] - cfg.l2 * params.w[j];
      params.w[j] = (params.w[j] - step * loss_grad) * shrink;
    }
    params.b -= step * lg.grad_b;
  }
  if (trace != nullptr) trace->iterations = epoch;
  return params;
}

LinearParams fit_linear_svc(const LabeledMatrix& data, const LsvcConfig& cfg,
                            FitTrace* trace) {
  validate_training_data(data, true);
  if (!(cfg.lambda > 0.0)) throw ValidationError("lambda must be > 0");
  if (!(cfg.eta0 > 0.0)) throw ValidationError("eta0 must be > 0");
  if (cfg.epochs < 0) throw ValidationError("epochs must be >= 0");

  LinearParams params;
  params.w.assign(data.dim(), 0.0);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double t = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (auto i : order) {
      const double eta = cfg.eta0 / (1.0 + cfg.eta0 * cfg.lambda * t);
      auto x = data.features.row(i);
      const double y = sign_of(data.labels[i]);
      const double margin = y * params.score(x);
      const double shrink = 1.0 - eta * cfg.lambda;
      for (auto& wj : params.w) wj *= shrink;
      if (margin < 1.0) {
        for (std::size_t j = 0; j < x.size(); ++j) params.w[j] += eta * y * x[j];
        params.b += eta * y;
      }
      t += 1.0;
    }
    if (trace != nullptr) {
      trace->objective.push_back(hinge_objective(data, params, cfg.lambda));
    }
  }
  if (trace != nullptr) trace->iterations = cfg.epochs;
  return params;
}

}  // namespace sarcasm
