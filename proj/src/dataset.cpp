#include "sarcasm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sarcasm/error.hpp"

namespace sarcasm {

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

bool null_text(const nlohmann::json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return true;
  return it->is_string() && is_blank(it->get_ref<const std::string&>());
}

bool null_field(const nlohmann::json& object, const char* key) {
  auto it = object.find(key);
  return it == object.end() || it->is_null();
}

std::string at_line(std::size_t line) {
  return "line " + std::to_string(line + 1);
}

Record to_record(const RawRow& row, DatasetKind kind) {
  const auto& obj = row.object;
  Record record;
  record.line = row.line;

  const auto& response = obj.at("response");
  if (!response.is_string()) {
    throw ValidationError(at_line(row.line) + ": response is not a string");
  }
  record.response = response.get<std::string>();

  const auto& context = obj.at("context");
  if (!context.is_array()) {
    throw ValidationError(at_line(row.line) + ": context is not an array");
  }
  for (const auto& turn : context) {
    if (!turn.is_string()) {
      throw ValidationError(at_line(row.line) +
                            ": context turn is not a string");
    }
    record.context.push_back(turn.get<std::string>());
  }

  if (kind == DatasetKind::Train) {
    const auto& label = obj.at("label");
    if (!label.is_string()) {
      throw ValidationError(at_line(row.line) + ": label is not a string");
    }
    auto parsed = parse_label(label.get_ref<const std::string&>());
    if (!parsed) {
      throw ValidationError(at_line(row.line) + ": unknown label '" +
                            label.get<std::string>() + "'");
    }
    record.label = *parsed;
  } else {
    const auto& id = obj.at("id");
    if (id.is_string()) {
      record.id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      record.id = std::to_string(id.get<long long>());
    } else {
      throw ValidationError(at_line(row.line) + ": id is not a string");
    }
  }
  return record;
}

}  // namespace

NullFilterResult drop_null_rows(std::vector<RawRow> rows, DatasetKind kind) {
  NullFilterResult result;
  result.retained.reserve(rows.size());
  for (auto& row : rows) {
    bool drop = !row.object.is_object() ||
                null_text(row.object, "response") ||
                null_field(row.object, "context");
    if (!drop && kind == DatasetKind::Train) {
      drop = null_field(row.object, "label");
    }
    if (!drop && kind == DatasetKind::Test) {
      drop = null_field(row.object, "id");
    }
    if (drop) {
      ++result.dropped;
    } else {
      result.retained.push_back(std::move(row));
    }
  }
  return result;
}

LoadResult parse_dataset(const std::string& text, DatasetKind kind) {
  std::vector<RawRow> rows;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 0; std::getline(in, line); ++n) {
    if (is_blank(line)) continue;
    RawRow row;
    row.line = n;
    try {
      row.object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(at_line(n) + ": malformed JSON: " + e.what());
    }
    if (!row.object.is_object()) {
      throw FormatError(at_line(n) + ": expected a JSON object");
    }
    rows.push_back(std::move(row));
  }

  auto filtered = drop_null_rows(std::move(rows), kind);
  LoadResult result;
  result.dropped = filtered.dropped;
  result.dataset.kind = kind;
  result.dataset.records.reserve(filtered.retained.size());
  for (const auto& row : filtered.retained) {
    result.dataset.records.push_back(to_record(row, kind));
  }
  return result;
}

LoadResult load_dataset(const std::filesystem::path& path, DatasetKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read dataset " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_dataset(buffer.str(), kind);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const Record& record) {
  nlohmann::json obj;
  if (record.id) obj["id"] = *record.id;
  if (record.label) obj["label"] = std::string(to_string(*record.label));
  obj["response"] = record.response;
  obj["context"] = record.context;
  return obj;
}

std::string serialize_dataset(const Dataset& dataset) {
  std::string out;
  for (const auto& record : dataset.records) {
    out += to_json(record).dump();
    out += '\n';
  }
  return out;
}

std::string record_key(const Record& record) {
  if (record.id) return *record.id;
  return "t" + std::to_string(record.line);
}

}  // namespace sarcasm
