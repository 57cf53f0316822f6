#include "sarcasm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sarcasm/error.hpp"
#include "sarcasm/rng.hpp"

namespace sarcasm {

using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

json optional_path(const std::optional<fs::path>& p) {
  return p ? json(p->string()) : json(nullptr);
}

std::optional<fs::path> path_from(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return fs::path(it->get<std::string>());
}

json steps_json(const std::vector<Step>& steps) {
  json out = json::array();
  for (auto s : steps) out.push_back(std::string(to_string(s)));
  return out;
}

std::vector<Step> steps_from(const json& j) {
  std::vector<Step> steps;
  for (const auto& s : j) steps.push_back(parse_step(s.get<std::string>()));
  return steps;
}

const Dataset& require_records(const Dataset& d, const char* what) {
  if (d.records.empty()) throw ValidationError(std::string(what) + " has no usable records");
  return d;
}

// Featurization settings stored with a model so predict can repeat them.
json featurization_json(const RunConfig& cfg) {
  return {{"layout", std::string(to_string(cfg.layout))},
          {"source", cfg.glove ? "glove" : "precomputed"},
          {"bert_mode", std::string(to_string(cfg.bert_mode))},
          {"seq_len", cfg.seq_len},
          {"steps", steps_json(cfg.steps)},
          {"max_repeat", cfg.max_repeat},
          {"stopwords", optional_path(cfg.stopwords)},
          {"slang", optional_path(cfg.slang)},
          {"emoticons", optional_path(cfg.emoticons)}};
}

std::vector<Label> labels_at(const LabeledMatrix& data, const std::vector<std::size_t>& idx) {
  std::vector<Label> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(data.labels[i]);
  return out;
}

EvalReport fit_and_score(ModelKind kind, const LabeledMatrix& data, const Split& split,
                         const Hyperparameters& hp) {
  auto model = fit_model(kind, data.subset(split.train), hp);
  auto predictions = predict_batch(model, data.features.select_rows(split.validation));
  std::vector<Label> predicted;
  predicted.reserve(predictions.size());
  for (const auto& p : predictions) predicted.push_back(p.label);
  return report(predicted, labels_at(data, split.validation));
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (glove.has_value() == precomputed.has_value()) {
    throw ValidationError("config: exactly one of glove and precomputed must be set");
  }
  if (folds == 1 || folds < 0) throw ValidationError("config: folds must be >= 2");
  if (folds == 0 && !(holdout > 0.0 && holdout < 1.0)) {
    throw ValidationError("config: holdout must be in (0, 1)");
  }
  if (max_repeat < 1) throw ValidationError("config: max_repeat must be >= 1");
  if (seq_len < 1) throw ValidationError("config: seq_len must be >= 1");
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("config document is not an object");
  try {
    RunConfig cfg;
    cfg.train_file = path_from(j, "train_file");
    cfg.test_file = path_from(j, "test_file");
    cfg.glove = path_from(j, "glove");
    cfg.precomputed = path_from(j, "precomputed");
    if (j.contains("layout")) cfg.layout = parse_layout(j["layout"].get<std::string>());
    if (j.contains("model") && !j["model"].is_null()) {
      cfg.model = parse_model_kind(j["model"].get<std::string>());
    }
    if (j.contains("hyperparameters")) cfg.hp = hyperparameters_from_json(j["hyperparameters"]);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.holdout = j.value("holdout", cfg.holdout);
    cfg.folds = j.value("folds", cfg.folds);
    cfg.refit = j.value("refit", cfg.refit);
    cfg.out = path_from(j, "out");
    cfg.report = path_from(j, "report");
    cfg.stopwords = path_from(j, "stopwords");
    cfg.slang = path_from(j, "slang");
    cfg.emoticons = path_from(j, "emoticons");
    if (j.contains("steps")) cfg.steps = steps_from(j["steps"]);
    cfg.max_repeat = j.value("max_repeat", cfg.max_repeat);
    if (j.contains("bert_mode")) cfg.bert_mode = parse_bert_mode(j["bert_mode"].get<std::string>());
    cfg.seq_len = j.value("seq_len", cfg.seq_len);
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

json to_json(const RunConfig& cfg) {
  return {{"train_file", optional_path(cfg.train_file)},
          {"test_file", optional_path(cfg.test_file)},
          {"glove", optional_path(cfg.glove)},
          {"precomputed", optional_path(cfg.precomputed)},
          {"layout", std::string(to_string(cfg.layout))},
          {"model", cfg.model ? json(std::string(to_string(*cfg.model))) : json(nullptr)},
          {"hyperparameters", to_json(cfg.hp)},
          {"seed", cfg.seed},
          {"holdout", cfg.holdout},
          {"folds", cfg.folds},
          {"refit", cfg.refit},
          {"out", optional_path(cfg.out)},
          {"report", optional_path(cfg.report)},
          {"stopwords", optional_path(cfg.stopwords)},
          {"slang", optional_path(cfg.slang)},
          {"emoticons", optional_path(cfg.emoticons)},
          {"steps", steps_json(cfg.steps)},
          {"max_repeat", cfg.max_repeat},
          {"bert_mode", std::string(to_string(cfg.bert_mode))},
          {"seq_len", cfg.seq_len}};
}

PipelineConfig make_pipeline_config(const RunConfig& cfg) {
  auto config = default_pipeline_config();
  if (cfg.stopwords) config.stopwords = load_word_list(*cfg.stopwords);
  if (cfg.slang) config.slang_map = load_tab_map(*cfg.slang);
  if (cfg.emoticons) config.emoticon_map = load_tab_map(*cfg.emoticons);
  config.steps = cfg.steps;
  config.max_repeat = cfg.max_repeat;
  config.validate();
  return config;
}

FeatureSource load_feature_source(const RunConfig& cfg) {
  if (cfg.glove) {
    auto loaded = load_glove(*cfg.glove);
    if (loaded.duplicates > 0) {
      std::fprintf(stderr, "warning: %zu duplicate tokens in %s (last one kept)\n",
                   loaded.duplicates, cfg.glove->string().c_str());
    }
    return GloveSource{std::make_shared<const EmbeddingTable>(std::move(loaded.table))};
  }
  if (!cfg.precomputed) throw ValidationError("config: no embedding source");
  auto store = std::make_shared<const PrecomputedStore>(load_precomputed(*cfg.precomputed));
  if (store->mode != cfg.bert_mode) {
    throw ValidationError("precomputed file is " + std::string(to_string(store->mode)) +
                          " but bert mode " + std::string(to_string(cfg.bert_mode)) +
                          " was requested");
  }
  return PrecomputedSource{store, cfg.bert_mode == BertMode::Sequence ? cfg.seq_len : 1};
}

Split holdout_split(std::size_t n, double holdout, std::uint64_t seed) {
  if (n < 2) throw ValidationError("need at least 2 records for a holdout split");
  Rng rng(seed);
  auto order = rng.permutation(n);
  auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * holdout));
  n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  Split split;
  split.train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val));
  split.validation.assign(order.end() - static_cast<std::ptrdiff_t>(n_val), order.end());
  return split;
}

std::vector<Split> kfold_splits(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw ValidationError("folds must be in [2, " + std::to_string(n) + "]");
  }
  Rng rng(seed);
  auto order = rng.permutation(n);
  std::vector<Split> splits(static_cast<std::size_t>(k));
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto fold = pos % static_cast<std::size_t>(k);
    for (std::size_t f = 0; f < splits.size(); ++f) {
      (f == fold ? splits[f].validation : splits[f].train).push_back(order[pos]);
    }
  }
  return splits;
}

TrainOutcome cmd_train(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.train_file) throw ValidationError("config: train_file is required");
  auto loaded = load_dataset(*cfg.train_file, DatasetKind::Train);
  require_records(loaded.dataset, "training file");
  auto pipeline = make_pipeline_config(cfg);
  auto source = load_feature_source(cfg);
  auto features = featurize(loaded.dataset, source, cfg.layout, pipeline);
  auto data = features.labeled();

  const ModelKind kind = cfg.model.value_or(ModelKind::LogisticRegression);
  Hyperparameters hp = cfg.hp;
  hp.seed = cfg.seed;

  TrainOutcome outcome;
  outcome.stats = features.stats;
  outcome.dropped = loaded.dropped;
  if (cfg.folds >= 2) {
    for (const auto& split : kfold_splits(data.size(), cfg.folds, cfg.seed)) {
      outcome.reports.push_back(fit_and_score(kind, data, split, hp));
    }
    outcome.model = fit_model(kind, data, hp);
  } else {
    auto split = holdout_split(data.size(), cfg.holdout, cfg.seed);
    auto model = fit_model(kind, data.subset(split.train), hp);
    auto predictions = predict_batch(model, data.features.select_rows(split.validation));
    std::vector<Label> predicted;
    for (const auto& p : predictions) predicted.push_back(p.label);
    outcome.reports.push_back(report(predicted, labels_at(data, split.validation)));
    outcome.model = cfg.refit ? fit_model(kind, data, hp) : std::move(model);
  }
  outcome.model.train_config["featurization"] = featurization_json(cfg);

  std::string summary;
  summary += "model: " + std::string(display_name(kind)) + "\n";
  summary += "records: " + std::to_string(data.size()) + " (dropped " +
             std::to_string(loaded.dropped) + ")  d=" + std::to_string(data.dim()) + "\n";
  if (features.stats.sentences > 0) {
    summary += "all-OOV sentences: " + std::to_string(features.stats.all_oov) + "/" +
               std::to_string(features.stats.sentences) + "\n";
  }
  if (outcome.reports.size() == 1) {
    summary += "validation (holdout " + fmt("%.2f", cfg.holdout) + "):\n";
    summary += format_report(outcome.reports.front());
  } else {
    double mean = 0.0;
    for (const auto& r : outcome.reports) mean += r.sarcasm.f1;
    mean /= static_cast<double>(outcome.reports.size());
    double var = 0.0;
    for (const auto& r : outcome.reports) var += (r.sarcasm.f1 - mean) * (r.sarcasm.f1 - mean);
    var /= static_cast<double>(outcome.reports.size());
    summary += std::to_string(cfg.folds) + "-fold SARCASM F1: mean " + fmt("%.4f", mean) +
               " std " + fmt("%.4f", std::sqrt(var)) + "\n";
  }
  outcome.summary = summary;

  if (cfg.out) save_model(outcome.model, *cfg.out);
  if (cfg.report) {
    json doc = {{"model", std::string(to_string(kind))}, {"reports", json::array()}};
    for (const auto& r : outcome.reports) doc["reports"].push_back(to_json(r));
    write_text(*cfg.report, doc.dump(2) + "\n");
  }
  return outcome;
}

PredictOutcome cmd_predict(const RunConfig& cfg, const fs::path& model_path) {
  if (!cfg.test_file) throw ValidationError("config: test_file is required");
  auto model = load_model(model_path);

  RunConfig effective = cfg;
  if (auto it = model.train_config.find("featurization"); it != model.train_config.end()) {
    const auto& f = *it;
    effective.layout = parse_layout(f.at("layout").get<std::string>());
    effective.steps = steps_from(f.at("steps"));
    effective.max_repeat = f.at("max_repeat").get<int>();
    if (!cfg.stopwords) effective.stopwords = path_from(f, "stopwords");
    if (!cfg.slang) effective.slang = path_from(f, "slang");
    if (!cfg.emoticons) effective.emoticons = path_from(f, "emoticons");
  }
  if (effective.glove.has_value() == effective.precomputed.has_value()) {
    throw ValidationError("config: exactly one of glove and precomputed must be set");
  }

  auto loaded = load_dataset(*cfg.test_file, DatasetKind::Test);
  PredictOutcome outcome;
  if (!loaded.dataset.records.empty()) {
    auto source = load_feature_source(effective);
    const auto width = feature_length(source, effective.layout);
    if (width != model.dim) {
      throw ValidationError("feature length mismatch: expected d=" +
                            std::to_string(model.dim) + ", got " + std::to_string(width));
    }
    auto features = featurize(loaded.dataset, source, effective.layout,
                              make_pipeline_config(effective));
    auto predictions = predict_batch(model, features.features);
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      outcome.csv += features.keys[i];
      outcome.csv += ',';
      outcome.csv += to_string(predictions[i].label);
      outcome.csv += '\n';
    }
    outcome.count = predictions.size();
  }
  if (cfg.out) write_text(*cfg.out, outcome.csv);
  return outcome;
}

const AblationCell& AblationGrid::at(ModelKind kind, Layout layout) const {
  for (const auto& c : cells) {
    if (c.kind == kind && c.layout == layout) return c;
  }
  throw ValidationError("no ablation cell for " + std::string(to_string(kind)));
}

AblationGrid cmd_ablate(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.train_file) throw ValidationError("config: train_file is required");
  auto loaded = load_dataset(*cfg.train_file, DatasetKind::Train);
  require_records(loaded.dataset, "training file");
  auto pipeline = make_pipeline_config(cfg);
  auto source = load_feature_source(cfg);

  std::vector<ModelKind> kinds;
  if (cfg.model) {
    kinds.push_back(*cfg.model);
  } else {
    kinds.assign(std::begin(kAllModelKinds), std::end(kAllModelKinds));
  }
  Hyperparameters hp = cfg.hp;
  hp.seed = cfg.seed;

  AblationGrid grid;
  const Layout layouts[] = {Layout::ResponseOnly, Layout::ContextThenResponse};
  for (auto layout : layouts) {
    auto data = featurize(loaded.dataset, source, layout, pipeline).labeled();
    auto split = holdout_split(data.size(), cfg.holdout, cfg.seed);
    for (auto kind : kinds) {
      grid.cells.push_back({kind, layout, fit_and_score(kind, data, split, hp)});
    }
  }

  char line[256];
  std::snprintf(line, sizeof(line), "%-34s %12s %18s %12s %18s\n", "Classifier",
                "F1 response", "F1 context+resp", "macro resp", "macro ctx+resp");
  grid.table += line;
  grid.document = {{"seed", cfg.seed}, {"holdout", cfg.holdout}, {"rows", json::array()}};
  for (auto kind : kinds) {
    const auto& r = grid.at(kind, Layout::ResponseOnly).report;
    const auto& c = grid.at(kind, Layout::ContextThenResponse).report;
    std::snprintf(line, sizeof(line), "%-34s %12.4f %18.4f %12.4f %18.4f\n",
                  std::string(display_name(kind)).c_str(), r.sarcasm.f1, c.sarcasm.f1,
                  r.macro_f1, c.macro_f1);
    grid.table += line;
    grid.document["rows"].push_back({{"model", std::string(to_string(kind))},
                                     {"response", to_json(r)},
                                     {"both", to_json(c)}});
  }
  if (cfg.out) write_text(*cfg.out, grid.document.dump(2) + "\n");
  return grid;
}

std::string cmd_preprocess(const RunConfig& cfg) {
  const bool train = cfg.train_file.has_value();
  if (train == cfg.test_file.has_value()) {
    throw ValidationError("preprocess takes exactly one of train_file and test_file");
  }
  auto loaded = train ? load_dataset(*cfg.train_file, DatasetKind::Train)
                      : load_dataset(*cfg.test_file, DatasetKind::Test);
  auto pipeline = make_pipeline_config(cfg);
  std::string out;
  for (const auto& record : loaded.dataset.records) {
    json row;
    row["key"] = record_key(record);
    if (record.label) row["label"] = std::string(to_string(*record.label));
    row["response"] = preprocess_text(record.response, pipeline);
    row["context"] = json::array();
    for (const auto& turn : record.context) {
      row["context"].push_back(preprocess_text(turn, pipeline));
    }
    out += row.dump() + "\n";
  }
  if (cfg.out) write_text(*cfg.out, out);
  return out;
}

std::string cmd_embed(const RunConfig& cfg) {
  cfg.validate();
  const bool train = cfg.train_file.has_value();
  if (train == cfg.test_file.has_value()) {
    throw ValidationError("embed takes exactly one of train_file and test_file");
  }
  auto loaded = train ? load_dataset(*cfg.train_file, DatasetKind::Train)
                      : load_dataset(*cfg.test_file, DatasetKind::Test);
  auto source = load_feature_source(cfg);
  auto features = featurize(loaded.dataset, source, cfg.layout, make_pipeline_config(cfg));
  std::string out = "dim=" + std::to_string(feature_length(source, cfg.layout)) + "\n";
  for (std::size_t i = 0; i < features.keys.size(); ++i) {
    out += format_vector_line(features.keys[i], 'F', features.features.row(i));
  }
  if (cfg.out) write_text(*cfg.out, out);
  return out;
}

std::vector<std::pair<std::string, Label>> parse_label_csv(const std::string& text) {
  std::vector<std::pair<std::string, Label>> rows;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw FormatError("line " + std::to_string(n) + ": expected <id>,<label>");
    }
    auto label = parse_label(std::string_view(line).substr(comma + 1));
    if (!label) {
      throw FormatError("line " + std::to_string(n) + ": unknown label '" +
                        line.substr(comma + 1) + "'");
    }
    rows.emplace_back(line.substr(0, comma), *label);
  }
  return rows;
}

EvalReport cmd_evaluate(const fs::path& predictions, const fs::path& gold) {
  auto predicted = parse_label_csv(read_text(predictions));
  std::vector<std::pair<std::string, Label>> truth;
  const auto ext = gold.extension().string();
  if (ext == ".jsonl" || ext == ".json") {
    std::istringstream in(read_text(gold));
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto j = json::parse(line);
        auto label = parse_label(j.at("label").get<std::string>());
        if (!label) throw FormatError("unknown label");
        const auto& id = j.at("id");
        truth.emplace_back(id.is_string() ? id.get<std::string>() : id.dump(), *label);
      } catch (const json::exception& e) {
        throw FormatError(gold.string() + ": line " + std::to_string(n) + ": " + e.what());
      }
    }
  } else {
    truth = parse_label_csv(read_text(gold));
  }

  std::unordered_map<std::string, Label> by_id;
  for (const auto& [id, label] : predicted) {
    if (!by_id.emplace(id, label).second) {
      throw ValidationError("duplicate prediction for id " + id);
    }
  }
  if (by_id.size() != truth.size()) {
    throw ValidationError("got " + std::to_string(by_id.size()) + " predictions for " +
                          std::to_string(truth.size()) + " gold labels");
  }
  std::vector<Label> preds;
  std::vector<Label> truths;
  for (const auto& [id, label] : truth) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ValidationError("no prediction for id " + id);
    preds.push_back(it->second);
    truths.push_back(label);
  }
  return report(preds, truths);
}

}  // namespace sarcasm
