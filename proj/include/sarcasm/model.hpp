#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "sarcasm/forest.hpp"
#include "sarcasm/linear.hpp"
#include "sarcasm/naive_bayes.hpp"
#include "sarcasm/scaler.hpp"

namespace sarcasm {

enum class ModelKind { LogisticRegression, LinearSvc, GaussianNb, RandomForest };

inline constexpr ModelKind kAllModelKinds[] = {
    ModelKind::LinearSvc, ModelKind::LogisticRegression, ModelKind::GaussianNb,
    ModelKind::RandomForest};

std::string_view to_string(ModelKind kind);  // lr, lsvc, gnb, rf
std::string_view display_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view tag);

struct Hyperparameters {
  LrConfig lr;
  LsvcConfig lsvc;
  ForestConfig rf;
  // Standardize features before fitting; nullopt picks the per-kind default
  // (on for LR/LSVC, off for GNB/RF).
  std::optional<bool> standardize;
  std::uint64_t seed = 42;
};

nlohmann::json to_json(const Hyperparameters& hp);
Hyperparameters hyperparameters_from_json(const nlohmann::json& j);

struct TrainedModel {
  ModelKind kind = ModelKind::LogisticRegression;
  std::size_t dim = 0;
  std::optional<Scaler> scaler;
  std::variant<LinearParams, GaussianNbParams, ForestParams> params;
  std::uint64_t seed = 42;
  // Hyperparameters plus whatever featurization settings the caller records.
  nlohmann::json train_config = nlohmann::json::object();
};

struct Prediction {
  Label label = Label::NotSarcasm;
  // LR/LSVC: w.x + b. GNB: log posterior difference (SARCASM - NOT).
  // RF: fraction of trees voting SARCASM.
  double score = 0.0;
  // LR only: sigmoid(score).
  std::optional<double> probability;
};

TrainedModel fit_model(ModelKind kind, const LabeledMatrix& data,
                       const Hyperparameters& hp);

Prediction predict(const TrainedModel& model, std::span<const double> x);
std::vector<Prediction> predict_batch(const TrainedModel& model, const Matrix& x);

inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace sarcasm
