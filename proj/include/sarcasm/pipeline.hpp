#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sarcasm/eval.hpp"
#include "sarcasm/featurize.hpp"
#include "sarcasm/model.hpp"

namespace sarcasm {

namespace fs = std::filesystem;

// Everything a command needs. All randomness derives from `seed`.
struct RunConfig {
  std::optional<fs::path> train_file;
  std::optional<fs::path> test_file;
  std::optional<fs::path> glove;
  std::optional<fs::path> precomputed;
  Layout layout = Layout::ContextThenResponse;
  std::optional<ModelKind> model;  // unset: LR for train, all four for ablate
  Hyperparameters hp;
  std::uint64_t seed = 42;
  double holdout = 0.2;
  int folds = 0;  // >= 2 selects k-fold cross-validation instead of holdout
  bool refit = false;
  std::optional<fs::path> out;
  std::optional<fs::path> report;
  std::optional<fs::path> stopwords;
  std::optional<fs::path> slang;
  std::optional<fs::path> emoticons;
  std::vector<Step> steps{std::begin(kAllSteps), std::end(kAllSteps)};
  int max_repeat = 2;
  BertMode bert_mode = BertMode::Pooled;
  std::size_t seq_len = 64;

  // Exactly one embedding source; holdout in (0,1) unless folds >= 2.
  void validate() const;
};

// Keys mirror the long CLI flag names without dashes, e.g. "train_file".
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

PipelineConfig make_pipeline_config(const RunConfig& cfg);
FeatureSource load_feature_source(const RunConfig& cfg);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// Seeded shuffle; the last round(n * holdout) shuffled rows validate.
Split holdout_split(std::size_t n, double holdout, std::uint64_t seed);
// Fold f takes every k-th position of one seeded shuffle.
std::vector<Split> kfold_splits(std::size_t n, int k, std::uint64_t seed);

struct TrainOutcome {
  TrainedModel model;
  // Holdout report, or per-fold reports when cross-validating.
  std::vector<EvalReport> reports;
  EmbedStats stats;
  std::size_t dropped = 0;
  std::string summary;
};

TrainOutcome cmd_train(const RunConfig& cfg);

struct PredictOutcome {
  std::size_t count = 0;
  std::string csv;
};

// Writes `<id>,<label>` lines to cfg.out when set.
PredictOutcome cmd_predict(const RunConfig& cfg, const fs::path& model_path);

struct AblationCell {
  ModelKind kind;
  Layout layout;
  EvalReport report;
};

struct AblationGrid {
  std::vector<AblationCell> cells;
  std::string table;
  nlohmann::json document;

  const AblationCell& at(ModelKind kind, Layout layout) const;
};

AblationGrid cmd_ablate(const RunConfig& cfg);

// Tokenized records as JSONL.
std::string cmd_preprocess(const RunConfig& cfg);

// Feature matrix cache: header `dim=<D>` then `<key> F f1 ... fD` per record.
std::string cmd_embed(const RunConfig& cfg);

// `id,label` CSV predictions against gold labels (CSV or JSONL with id/label).
EvalReport cmd_evaluate(const fs::path& predictions, const fs::path& gold);

std::vector<std::pair<std::string, Label>> parse_label_csv(const std::string& text);

}  // namespace sarcasm
