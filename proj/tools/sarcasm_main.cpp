// Command-line front end: preprocess, embed, train, predict, evaluate, ablate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sarcasm/error.hpp"
#include "sarcasm/kernels.hpp"
#include "sarcasm/pipeline.hpp"

namespace {

using sarcasm::RunConfig;

// Flag values land here; only flags the user actually passed override the
// config file.
struct Flags {
  std::string config;
  std::string train_file, test_file, glove, precomputed;
  std::string layout, model, bert_mode;
  std::string out, report, stopwords, slang, emoticons, steps;
  std::uint64_t seed = 42;
  double holdout = 0.2;
  int folds = 0;
  std::size_t seq_len = 64;
  int max_repeat = 2;
  bool refit = false;
  double lr0 = 0.1, l2 = 1e-4, tol = 1e-6, lambda = 1e-4, eta0 = 0.01;
  int lr_epochs = 500, svc_epochs = 50;
  int trees = 100, max_depth = 0, min_leaf = 1, mtry = 0;
  int threads = 0;
  std::string model_file, predictions, gold;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file (flags override it)");
  app->add_option("--stopwords", f.stopwords, "stopword list, one per line");
  app->add_option("--slang", f.slang, "slang map, key<TAB>value");
  app->add_option("--emoticons", f.emoticons, "emoticon map, key<TAB>value");
  app->add_option("--steps", f.steps,
                  "comma-separated preprocessing steps (default: all six)");
  app->add_option("--max-repeat", f.max_repeat, "elongation run length kept");
  app->add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)");
}

void add_source(CLI::App* app, Flags& f) {
  app->add_option("--glove", f.glove, "GloVe text vectors");
  app->add_option("--precomputed", f.precomputed, "precomputed BERT vectors");
  app->add_option("--layout", f.layout, "both | response")
      ->check(CLI::IsMember({"both", "response"}));
  app->add_option("--bert-mode", f.bert_mode, "pooled | sequence")
      ->check(CLI::IsMember({"pooled", "sequence"}));
  app->add_option("--seq-len", f.seq_len, "rows per field in sequence mode");
}

void add_training(CLI::App* app, Flags& f) {
  app->add_option("--model", f.model, "lr | lsvc | gnb | rf")
      ->check(CLI::IsMember({"lr", "lsvc", "gnb", "rf"}));
  app->add_option("--seed", f.seed, "seed for every random choice");
  app->add_option("--holdout", f.holdout, "validation fraction");
  app->add_option("--folds", f.folds, "k-fold cross-validation instead of holdout");
  app->add_option("--lr0", f.lr0, "logistic regression initial step");
  app->add_option("--lr-epochs", f.lr_epochs, "logistic regression iterations");
  app->add_option("--l2", f.l2, "logistic regression L2 penalty");
  app->add_option("--tol", f.tol, "logistic regression gradient tolerance");
  app->add_option("--lambda", f.lambda, "linear SVC regularization");
  app->add_option("--eta0", f.eta0, "linear SVC initial step");
  app->add_option("--svc-epochs", f.svc_epochs, "linear SVC epochs");
  app->add_option("--trees", f.trees, "random forest size");
  app->add_option("--max-depth", f.max_depth, "random forest depth limit (0 = none)");
  app->add_option("--min-leaf", f.min_leaf, "random forest minimum leaf size");
  app->add_option("--mtry", f.mtry, "features tried per split (0 = floor(sqrt(d)))");
}

bool given(const CLI::App* app, const char* name) { return app->count(name) > 0; }

RunConfig build_config(const CLI::App* app, const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw sarcasm::IoError("cannot read config " + f.config);
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw sarcasm::FormatError(f.config + ": " + e.what());
    }
    cfg = sarcasm::run_config_from_json(j);
  }
  auto opt = [&](const char* name) {
    try {
      return given(app, name);
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (opt("--train-file")) cfg.train_file = f.train_file;
  if (opt("--test-file")) cfg.test_file = f.test_file;
  if (opt("--glove")) cfg.glove = f.glove;
  if (opt("--precomputed")) cfg.precomputed = f.precomputed;
  if (opt("--layout")) cfg.layout = sarcasm::parse_layout(f.layout);
  if (opt("--model")) cfg.model = sarcasm::parse_model_kind(f.model);
  if (opt("--bert-mode")) cfg.bert_mode = sarcasm::parse_bert_mode(f.bert_mode);
  if (opt("--seq-len")) cfg.seq_len = f.seq_len;
  if (opt("--seed")) cfg.seed = f.seed;
  if (opt("--holdout")) cfg.holdout = f.holdout;
  if (opt("--folds")) cfg.folds = f.folds;
  if (opt("--refit")) cfg.refit = f.refit;
  if (opt("--out")) cfg.out = f.out;
  if (opt("--report")) cfg.report = f.report;
  if (opt("--stopwords")) cfg.stopwords = f.stopwords;
  if (opt("--slang")) cfg.slang = f.slang;
  if (opt("--emoticons")) cfg.emoticons = f.emoticons;
  if (opt("--max-repeat")) cfg.max_repeat = f.max_repeat;
  if (opt("--steps")) {
    cfg.steps.clear();
    std::stringstream in(f.steps);
    std::string name;
    while (std::getline(in, name, ',')) {
      if (!name.empty()) cfg.steps.push_back(sarcasm::parse_step(name));
    }
  }
  if (opt("--lr0")) cfg.hp.lr.lr0 = f.lr0;
  if (opt("--lr-epochs")) cfg.hp.lr.epochs = f.lr_epochs;
  if (opt("--l2")) cfg.hp.lr.l2 = f.l2;
  if (opt("--tol")) cfg.hp.lr.tol = f.tol;
  if (opt("--lambda")) cfg.hp.lsvc.lambda = f.lambda;
  if (opt("--eta0")) cfg.hp.lsvc.eta0 = f.eta0;
  if (opt("--svc-epochs")) cfg.hp.lsvc.epochs = f.svc_epochs;
  if (opt("--trees")) cfg.hp.rf.n_trees = f.trees;
  if (opt("--max-depth")) cfg.hp.rf.max_depth = f.max_depth;
  if (opt("--min-leaf")) cfg.hp.rf.min_leaf = f.min_leaf;
  if (opt("--mtry")) cfg.hp.rf.mtry = f.mtry;
  if (opt("--threads")) sarcasm::kernels::set_num_threads(f.threads);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sarcasm detection pipeline: preprocess, embed, train, predict, evaluate"};
  app.require_subcommand(1);
  Flags f;

  auto* preprocess = app.add_subcommand("preprocess", "tokenize and normalize a dataset");
  preprocess->add_option("--train-file", f.train_file, "labeled JSONL");
  preprocess->add_option("--test-file", f.test_file, "unlabeled JSONL with ids");
  preprocess->add_option("--out", f.out, "output JSONL (default stdout)");
  add_common(preprocess, f);

  auto* embed = app.add_subcommand("embed", "write the feature matrix cache");
  embed->add_option("--train-file", f.train_file, "labeled JSONL");
  embed->add_option("--test-file", f.test_file, "unlabeled JSONL with ids");
  embed->add_option("--out", f.out, "output file (default stdout)");
  add_common(embed, f);
  add_source(embed, f);

  auto* train = app.add_subcommand("train", "fit a classifier and save it");
  train->add_option("--train-file", f.train_file, "labeled JSONL");
  train->add_option("--out", f.out, "model file");
  train->add_option("--report", f.report, "validation report JSON");
  train->add_flag("--refit", f.refit, "refit on all records after validating");
  add_common(train, f);
  add_source(train, f);
  add_training(train, f);

  auto* predict = app.add_subcommand("predict", "label a test file with a saved model");
  predict->add_option("--model-file", f.model_file, "saved model")->required();
  predict->add_option("--test-file", f.test_file, "unlabeled JSONL with ids")->required();
  predict->add_option("--out", f.out, "predictions CSV (default stdout)");
  add_common(predict, f);
  add_source(predict, f);

  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--predictions", f.predictions, "id,label CSV")->required();
  evaluate->add_option("--gold", f.gold, "id,label CSV or JSONL with id and label")
      ->required();
  evaluate->add_option("--out", f.out, "report JSON");

  auto* ablate = app.add_subcommand("ablate", "classifier x layout F-measure grid");
  ablate->add_option("--train-file", f.train_file, "labeled JSONL");
  ablate->add_option("--out", f.out, "grid JSON");
  add_common(ablate, f);
  add_source(ablate, f);
  add_training(ablate, f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (preprocess->parsed()) {
      auto out = sarcasm::cmd_preprocess(build_config(preprocess, f));
      if (f.out.empty()) std::cout << out;
    } else if (embed->parsed()) {
      auto out = sarcasm::cmd_embed(build_config(embed, f));
      if (f.out.empty()) std::cout << out;
    } else if (train->parsed()) {
      auto outcome = sarcasm::cmd_train(build_config(train, f));
      std::cout << outcome.summary;
    } else if (predict->parsed()) {
      auto outcome = sarcasm::cmd_predict(build_config(predict, f), f.model_file);
      if (f.out.empty()) {
        std::cout << outcome.csv;
      } else {
        std::cerr << "wrote " << outcome.count << " predictions to " << f.out << "\n";
      }
    } else if (evaluate->parsed()) {
      auto r = sarcasm::cmd_evaluate(f.predictions, f.gold);
      std::cout << sarcasm::format_report(r);
      if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw sarcasm::IoError("cannot write " + f.out);
        out << sarcasm::to_json(r).dump(2) << "\n";
      }
    } else if (ablate->parsed()) {
      auto grid = sarcasm::cmd_ablate(build_config(ablate, f));
      std::cout << grid.table;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
