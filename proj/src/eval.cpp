#include "sarcasm/eval.hpp"

#include <cstdio>

#include "sarcasm/error.hpp"

namespace sarcasm {

ConfusionMatrix confusion(std::span<const Label> predictions,
                          std::span<const Label> truths) {
  if (predictions.size() != truths.size()) {
    throw ValidationError("got " + std::to_string(predictions.size()) +
                          " predictions for " + std::to_string(truths.size()) +
                          " truths");
  }
  if (truths.empty()) throw ValidationError("nothing to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool pred = predictions[i] == Label::Sarcasm;
    const bool truth = truths[i] == Label::Sarcasm;
    if (pred && truth) {
      ++cm.tp;
    } else if (pred) {
      ++cm.fp;
    } else if (truth) {
      ++cm.fn;
    } else {
      ++cm.tn;
    }
  }
  return cm;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

namespace {

double ratio(std::size_t num, std::size_t den, const std::string& what,
             std::vector<std::string>& warnings) {
  if (den == 0) {
    warnings.push_back(what + " is undefined (no instances); reported as 0");
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn,
                           const std::string& name, std::vector<std::string>& warnings) {
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp, name + " precision", warnings);
  m.recall = ratio(tp, tp + fn, name + " recall", warnings);
  if (m.precision + m.recall == 0.0) {
    warnings.push_back(name + " F1 has precision + recall = 0; reported as 0");
  }
  m.f1 = f_measure(m.precision, m.recall);
  return m;
}

nlohmann::json metrics_json(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

}  // namespace

EvalReport report(std::span<const Label> predictions, std::span<const Label> truths) {
  EvalReport r;
  r.counts = confusion(predictions, truths);
  const auto& c = r.counts;
  r.sarcasm = class_metrics(c.tp, c.fp, c.fn, "SARCASM", r.warnings);
  // Negative class as positive: its tp is tn, its fp is fn, its fn is fp.
  r.not_sarcasm = class_metrics(c.tn, c.fn, c.fp, "NOT_SARCASM", r.warnings);
  r.macro_f1 = (r.sarcasm.f1 + r.not_sarcasm.f1) / 2.0;
  r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  return r;
}

nlohmann::json to_json(const EvalReport& r) {
  return {{"SARCASM", metrics_json(r.sarcasm)},
          {"NOT_SARCASM", metrics_json(r.not_sarcasm)},
          {"macro_f1", r.macro_f1},
          {"accuracy", r.accuracy},
          {"confusion", {{"tp", r.counts.tp}, {"fp", r.counts.fp},
                         {"fn", r.counts.fn}, {"tn", r.counts.tn}}},
          {"warnings", r.warnings}};
}

std::string format_report(const EvalReport& r) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-12s %9s %9s %9s\n", "class", "precision",
                "recall", "f1");
  out += buf;
  auto row = [&](const char* name, const ClassMetrics& m) {
    std::snprintf(buf, sizeof(buf), "%-12s %9.4f %9.4f %9.4f\n", name, m.precision,
                  m.recall, m.f1);
    out += buf;
  };
  row("SARCASM", r.sarcasm);
  row("NOT_SARCASM", r.not_sarcasm);
  std::snprintf(buf, sizeof(buf), "macro-F1 %.4f  accuracy %.4f  (tp=%zu fp=%zu fn=%zu tn=%zu)\n",
                r.macro_f1, r.accuracy, r.counts.tp, r.counts.fp, r.counts.fn,
                r.counts.tn);
  out += buf;
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace sarcasm
