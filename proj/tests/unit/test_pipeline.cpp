#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sarcasm/error.hpp"
#include "sarcasm/pipeline.hpp"

namespace sarcasm {
namespace {

namespace fs = std::filesystem;

const std::string kData = SARCASM_DATA_DIR;
const std::string kCli = SARCASM_CLI;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sarcasm_pipeline_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  int run(const std::string& args) const {
    const std::string cmd = kCli + " " + args + " >" + (dir_ / "stdout.txt").string() +
                            " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stderr_text() const { return read_file(dir_ / "stderr.txt"); }
  std::string stdout_text() const { return read_file(dir_ / "stdout.txt"); }

  RunConfig smoke_config() const {
    RunConfig cfg;
    cfg.train_file = kData + "/smoke/train.jsonl";
    cfg.glove = kData + "/smoke/glove_smoke.txt";
    cfg.hp.rf.n_trees = 20;
    return cfg;
  }

  fs::path dir_;
};

TEST(Splits, HoldoutPartitions) {
  auto split = holdout_split(40, 0.2, 42);
  EXPECT_EQ(split.validation.size(), 8u);
  EXPECT_EQ(split.train.size(), 32u);
  std::set<std::size_t> all(split.train.begin(), split.train.end());
  all.insert(split.validation.begin(), split.validation.end());
  EXPECT_EQ(all.size(), 40u);
  auto again = holdout_split(40, 0.2, 42);
  EXPECT_EQ(again.validation, split.validation);
  EXPECT_THROW(holdout_split(1, 0.2, 42), ValidationError);
}

TEST(Splits, KFoldCoversEveryRowOnce) {
  auto folds = kfold_splits(23, 5, 7);
  ASSERT_EQ(folds.size(), 5u);
  std::multiset<std::size_t> seen;
  for (const auto& f : folds) {
    seen.insert(f.validation.begin(), f.validation.end());
    EXPECT_EQ(f.train.size() + f.validation.size(), 23u);
  }
  EXPECT_EQ(seen.size(), 23u);
  EXPECT_EQ(std::set<std::size_t>(seen.begin(), seen.end()).size(), 23u);
  EXPECT_THROW(kfold_splits(3, 5, 7), ValidationError);
}

TEST(RunConfigTest, ValidationRules) {
  RunConfig cfg;
  cfg.train_file = "x";
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.glove = "g";
  cfg.precomputed = "p";
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.precomputed.reset();
  EXPECT_NO_THROW(cfg.validate());
  cfg.holdout = 1.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.folds = 5;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(RunConfigTest, JsonRoundTrip) {
  RunConfig cfg;
  cfg.train_file = "a.jsonl";
  cfg.glove = "g.txt";
  cfg.layout = Layout::ResponseOnly;
  cfg.model = ModelKind::RandomForest;
  cfg.seed = 7;
  cfg.hp.rf.n_trees = 9;
  auto again = run_config_from_json(to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST_F(Workspace, TrainOnSmokeDataSavesModel) {
  auto cfg = smoke_config();
  cfg.out = path("model.json");
  auto outcome = cmd_train(cfg);
  EXPECT_TRUE(fs::exists(path("model.json")));
  ASSERT_EQ(outcome.reports.size(), 1u);
  EXPECT_EQ(outcome.reports[0].counts.total(), 8u);
  EXPECT_FALSE(outcome.summary.empty());
}

TEST_F(Workspace, TrainIsByteDeterministic) {
  for (auto kind : kAllModelKinds) {
    auto cfg = smoke_config();
    cfg.model = kind;
    cfg.out = path("a.json");
    cmd_train(cfg);
    cfg.out = path("b.json");
    cmd_train(cfg);
    EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json"))) << to_string(kind);
  }
}

TEST_F(Workspace, KFoldTraining) {
  auto cfg = smoke_config();
  cfg.folds = 4;
  auto outcome = cmd_train(cfg);
  EXPECT_EQ(outcome.reports.size(), 4u);
}

TEST_F(Workspace, PredictWritesOneLinePerRecord) {
  auto cfg = smoke_config();
  cfg.out = path("model.json");
  cmd_train(cfg);
  RunConfig pcfg;
  pcfg.test_file = kData + "/smoke/test.jsonl";
  pcfg.glove = kData + "/smoke/glove_smoke.txt";
  pcfg.out = path("pred.csv");
  auto outcome = cmd_predict(pcfg, path("model.json"));
  EXPECT_EQ(outcome.count, 6u);
  auto rows = parse_label_csv(read_file(path("pred.csv")));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].first, "twitter_1");
  auto first = read_file(path("pred.csv"));
  cmd_predict(pcfg, path("model.json"));
  EXPECT_EQ(read_file(path("pred.csv")), first);
}

TEST_F(Workspace, PredictOnEmptyTestFile) {
  auto cfg = smoke_config();
  cfg.out = path("model.json");
  cmd_train(cfg);
  std::ofstream(path("empty.jsonl")).close();
  RunConfig pcfg;
  pcfg.test_file = path("empty.jsonl");
  pcfg.glove = kData + "/smoke/glove_smoke.txt";
  pcfg.out = path("pred.csv");
  auto outcome = cmd_predict(pcfg, path("model.json"));
  EXPECT_EQ(outcome.count, 0u);
  EXPECT_TRUE(fs::exists(path("pred.csv")));
  EXPECT_EQ(read_file(path("pred.csv")), "");
}

TEST_F(Workspace, PredictRejectsFeatureLengthMismatch) {
  auto cfg = smoke_config();
  cfg.out = path("model.json");
  cmd_train(cfg);
  std::ofstream(path("tiny_glove.txt")) << "sure 1 2 3\ngreat 4 5 6\n";
  RunConfig pcfg;
  pcfg.test_file = kData + "/smoke/test.jsonl";
  pcfg.glove = path("tiny_glove.txt");
  try {
    cmd_predict(pcfg, path("model.json"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("expected d=50, got 6"), std::string::npos)
        << e.what();
  }
}

TEST_F(Workspace, AblateProducesEightCellGrid) {
  auto grid = cmd_ablate(smoke_config());
  EXPECT_EQ(grid.cells.size(), 8u);
  for (auto kind : kAllModelKinds) {
    EXPECT_NO_THROW(grid.at(kind, Layout::ResponseOnly));
    EXPECT_NO_THROW(grid.at(kind, Layout::ContextThenResponse));
  }
  EXPECT_EQ(cmd_ablate(smoke_config()).document.dump(), grid.document.dump());
}

TEST_F(Workspace, ContextHelpsOnContextDependentData) {
  auto cfg = smoke_config();
  cfg.train_file = kData + "/smoke/context_synthetic.jsonl";
  auto grid = cmd_ablate(cfg);
  const auto& with = grid.at(ModelKind::LogisticRegression, Layout::ContextThenResponse);
  const auto& without = grid.at(ModelKind::LogisticRegression, Layout::ResponseOnly);
  EXPECT_GE(with.report.sarcasm.f1, without.report.sarcasm.f1);
  EXPECT_GT(with.report.sarcasm.f1, 0.7);
}

TEST_F(Workspace, PreprocessAndEmbedOutputs) {
  auto cfg = smoke_config();
  auto jsonl = cmd_preprocess(cfg);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 40);
  auto cache = cmd_embed(cfg);
  EXPECT_EQ(cache.rfind("dim=50\n", 0), 0u);
  EXPECT_NE(cache.find("\nt0 F "), std::string::npos);
}

TEST_F(Workspace, PrecomputedSourceEndToEnd) {
  std::ofstream out(path("bert.txt"));
  out << "dim=2 mode=POOLED\n";
  for (int i = 0; i < 40; ++i) {
    const double v = i % 3;
    out << "t" << i << " C " << v << " 1\n" << "t" << i << " R " << -v << " 0.5\n";
  }
  out.close();
  auto cfg = smoke_config();
  cfg.glove.reset();
  cfg.precomputed = path("bert.txt");
  cfg.out = path("model.json");
  auto outcome = cmd_train(cfg);
  EXPECT_EQ(outcome.model.dim, 4u);
}

TEST_F(Workspace, EvaluatePredictionsAgainstGold) {
  std::ofstream(path("pred.csv")) << "a,SARCASM\nb,SARCASM\nc,NOT_SARCASM\n";
  std::ofstream(path("gold.csv")) << "c,NOT_SARCASM\nb,NOT_SARCASM\na,SARCASM\n";
  auto r = cmd_evaluate(path("pred.csv"), path("gold.csv"));
  EXPECT_EQ(r.counts, (ConfusionMatrix{1, 1, 0, 1}));
  std::ofstream(path("short.csv")) << "a,SARCASM\n";
  EXPECT_THROW(cmd_evaluate(path("short.csv"), path("gold.csv")), ValidationError);
}

TEST_F(Workspace, CliExitCodes) {
  const std::string smoke = "--train-file " + kData + "/smoke/train.jsonl --glove " + kData +
                            "/smoke/glove_smoke.txt";
  EXPECT_EQ(run("train " + smoke + " --out " + path("m.json").string()), 0) << stderr_text();
  EXPECT_TRUE(fs::exists(path("m.json")));
  EXPECT_EQ(run("train " + smoke + " --precomputed " + path("x.txt").string()), 1);
  EXPECT_NE(stderr_text().find("exactly one"), std::string::npos) << stderr_text();
  EXPECT_EQ(run("train --train-file /nonexistent.jsonl --glove " + kData +
                "/smoke/glove_smoke.txt"),
            1);
  EXPECT_NE(run("bogus-command"), 0);
  EXPECT_EQ(run("predict --model-file " + path("m.json").string() + " --test-file " + kData +
                "/smoke/test.jsonl --glove " + kData + "/smoke/glove_smoke.txt"),
            0)
      << stderr_text();
  const auto csv = stdout_text();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(Workspace, CliConfigFileWithFlagOverride) {
  nlohmann::json j = {{"train_file", kData + "/smoke/train.jsonl"},
                      {"glove", kData + "/smoke/glove_smoke.txt"},
                      {"model", "rf"},
                      {"seed", 3}};
  std::ofstream(path("cfg.json")) << j.dump();
  ASSERT_EQ(run("train --config " + path("cfg.json").string() + " --model gnb --out " +
                path("m.json").string()),
            0)
      << stderr_text();
  auto model = nlohmann::json::parse(read_file(path("m.json")));
  EXPECT_EQ(model.at("kind"), "gnb");
  EXPECT_EQ(model.at("seed"), 3);
}

}  // namespace
}  // namespace sarcasm
