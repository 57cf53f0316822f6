#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sarcasm/label.hpp"

namespace sarcasm {

// Counts with SARCASM as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> predictions,
                          std::span<const Label> truths);

// Harmonic mean of precision and recall; 0 when both are 0.
double f_measure(double precision, double recall);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  ClassMetrics sarcasm;
  ClassMetrics not_sarcasm;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix counts;
  // Zero-denominator conventions that were applied.
  std::vector<std::string> warnings;
};

EvalReport report(std::span<const Label> predictions, std::span<const Label> truths);

nlohmann::json to_json(const EvalReport& report);
std::string format_report(const EvalReport& report);

}  // namespace sarcasm
