#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sarcasm/label.hpp"

namespace sarcasm {

enum class DatasetKind { Train, Test };

// One dataset row. Training rows carry a label and no id; test rows carry an
// id and no label. `line` is the 0-based physical line the row came from.
struct Record {
  std::optional<std::string> id;
  std::optional<Label> label;
  std::string response;
  std::vector<std::string> context;
  std::size_t line = 0;

  bool operator==(const Record&) const = default;
};

struct Dataset {
  DatasetKind kind = DatasetKind::Train;
  std::vector<Record> records;
};

struct LoadResult {
  Dataset dataset;
  std::size_t dropped = 0;
};

// A parsed but unvalidated JSONL line.
struct RawRow {
  nlohmann::json object;
  std::size_t line = 0;
};

struct NullFilterResult {
  std::vector<RawRow> retained;
  std::size_t dropped = 0;
};

// Drops a row iff its response is null, missing, or blank; its context is
// null or missing; or (TRAIN) its label is null or missing. TEST rows with a
// null or missing id are dropped as well.
NullFilterResult drop_null_rows(std::vector<RawRow> rows, DatasetKind kind);

LoadResult load_dataset(const std::filesystem::path& path, DatasetKind kind);
LoadResult parse_dataset(const std::string& text, DatasetKind kind);

// Record <-> JSON using the shared-task field names.
nlohmann::json to_json(const Record& record);
std::string serialize_dataset(const Dataset& dataset);

// Key used to join records with precomputed vectors: `t<line>` for training
// rows, the id for test rows.
std::string record_key(const Record& record);

}  // namespace sarcasm
