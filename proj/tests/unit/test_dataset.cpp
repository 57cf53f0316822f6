#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sarcasm/dataset.hpp"
#include "sarcasm/error.hpp"

namespace sarcasm {
namespace {

RawRow raw(const char* text) { return {nlohmann::json::parse(text), 0}; }

TEST(Dataset, MapsDocumentedTrainSchema) {
  auto result = parse_dataset(
      R"({"label":"SARCASM","response":"sure, great idea","context":["we should meet at 6am"]})",
      DatasetKind::Train);
  ASSERT_EQ(result.dataset.records.size(), 1u);
  const auto& r = result.dataset.records[0];
  EXPECT_EQ(r.label, Label::Sarcasm);
  EXPECT_EQ(r.response, "sure, great idea");
  EXPECT_EQ(r.context, std::vector<std::string>{"we should meet at 6am"});
  EXPECT_FALSE(r.id.has_value());
  EXPECT_EQ(result.dropped, 0u);
}

TEST(Dataset, NullResponseRowIsDropped) {
  auto result = parse_dataset(R"({"label":"SARCASM","response":null,"context":[]})",
                              DatasetKind::Train);
  EXPECT_TRUE(result.dataset.records.empty());
  EXPECT_EQ(result.dropped, 1u);
}

TEST(Dataset, EmptyFileGivesEmptyDataset) {
  auto result = parse_dataset("", DatasetKind::Train);
  EXPECT_TRUE(result.dataset.records.empty());
  EXPECT_EQ(result.dropped, 0u);
}

TEST(Dataset, DropNullRows) {
  std::vector<RawRow> keep{raw(R"({"response":"a","label":"SARCASM","context":[]})")};
  auto kept = drop_null_rows(keep, DatasetKind::Train);
  EXPECT_EQ(kept.retained.size(), 1u);
  EXPECT_EQ(kept.dropped, 0u);

  auto null_response = drop_null_rows(
      {raw(R"({"response":null,"label":"SARCASM","context":[]})")}, DatasetKind::Train);
  EXPECT_TRUE(null_response.retained.empty());
  EXPECT_EQ(null_response.dropped, 1u);

  auto null_label = drop_null_rows({raw(R"({"response":"a","label":null,"context":["b"]})")},
                                   DatasetKind::Train);
  EXPECT_TRUE(null_label.retained.empty());
  EXPECT_EQ(null_label.dropped, 1u);

  // Test rows never need a label.
  auto test_row = drop_null_rows({raw(R"({"id":"x","response":"a","context":[]})")},
                                 DatasetKind::Test);
  EXPECT_EQ(test_row.retained.size(), 1u);
}

TEST(Dataset, NullFilteringOnFile) {
  auto result = load_dataset(SARCASM_TEST_DATA_DIR "/nulls_train.jsonl", DatasetKind::Train);
  ASSERT_EQ(result.dataset.records.size(), 2u);
  EXPECT_EQ(result.dropped, 4u);
  EXPECT_EQ(result.dataset.records[0].line, 0u);
  EXPECT_EQ(result.dataset.records[1].line, 5u);
  EXPECT_EQ(record_key(result.dataset.records[1]), "t5");
}

TEST(Dataset, MalformedLineNamesLineNumber) {
  try {
    parse_dataset("{\"label\":\"SARCASM\",\"response\":\"a\",\"context\":[]}\n{oops",
                  DatasetKind::Train);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Dataset, UnknownLabelIsValidationError) {
  EXPECT_THROW(parse_dataset(R"({"label":"IRONY","response":"a","context":[]})",
                             DatasetKind::Train),
               ValidationError);
}

TEST(Dataset, MissingFileIsIoError) {
  EXPECT_THROW(load_dataset("/nonexistent/file.jsonl", DatasetKind::Train), IoError);
}

TEST(Dataset, TestRecordsKeyedById) {
  auto result = parse_dataset(R"({"id":"twitter_7","response":"a","context":["b","c"]})",
                              DatasetKind::Test);
  ASSERT_EQ(result.dataset.records.size(), 1u);
  EXPECT_EQ(record_key(result.dataset.records[0]), "twitter_7");
  EXPECT_FALSE(result.dataset.records[0].label.has_value());
}

TEST(Dataset, ContextOrderAndDuplicatesPreserved) {
  std::string text =
      R"({"label":"SARCASM","response":"r","context":["first","second","third"]})"
      "\n"
      R"({"label":"SARCASM","response":"r","context":["first","second","third"]})";
  auto result = parse_dataset(text, DatasetKind::Train);
  ASSERT_EQ(result.dataset.records.size(), 2u);
  EXPECT_EQ(result.dataset.records[0].context,
            (std::vector<std::string>{"first", "second", "third"}));
}

TEST(Dataset, ReserializeIsLossless) {
  auto first = load_dataset(SARCASM_DATA_DIR "/smoke/train.jsonl", DatasetKind::Train);
  auto again = parse_dataset(serialize_dataset(first.dataset), DatasetKind::Train);
  ASSERT_EQ(first.dataset.records.size(), again.dataset.records.size());
  for (std::size_t i = 0; i < first.dataset.records.size(); ++i) {
    const auto& a = first.dataset.records[i];
    const auto& b = again.dataset.records[i];
    EXPECT_EQ(a.id, b.id);
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.response, b.response);
    EXPECT_EQ(a.context, b.context);
  }
}

TEST(Dataset, SmokeSetIsBalanced) {
  auto result = load_dataset(SARCASM_DATA_DIR "/smoke/train.jsonl", DatasetKind::Train);
  ASSERT_EQ(result.dataset.records.size(), 40u);
  int sarcastic = 0;
  for (const auto& r : result.dataset.records) sarcastic += r.label == Label::Sarcasm;
  EXPECT_EQ(sarcastic, 20);
}

}  // namespace
}  // namespace sarcasm
