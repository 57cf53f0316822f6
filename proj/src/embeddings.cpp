#include "sarcasm/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "sarcasm/error.hpp"

namespace sarcasm {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Splits on runs of spaces/tabs.
void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
}

// Iterates lines, stripping a trailing '\r'. Line numbers are 1-based.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

template <typename T>
bool parse_number(std::string_view field, T& value) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

bool EmbeddingTable::contains(std::string_view token) const {
  return index_.find(token) != index_.end();
}

std::span<const float> EmbeddingTable::lookup(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return {};
  return {values_.data() + it->second * dim_, dim_};
}

bool EmbeddingTable::insert(std::string token, std::span<const float> vector) {
  if (vector.size() != dim_) {
    throw ValidationError("vector for '" + token + "' has " +
                          std::to_string(vector.size()) + " components, expected " +
                          std::to_string(dim_));
  }
  auto it = index_.find(token);
  if (it != index_.end()) {
    std::copy(vector.begin(), vector.end(), values_.begin() + it->second * dim_);
    return true;
  }
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  values_.insert(values_.end(), vector.begin(), vector.end());
  return false;
}

GloveLoadResult parse_glove(std::string_view text) {
  GloveLoadResult result;
  LineReader reader(text);
  std::string_view line;
  std::vector<std::string_view> fields;
  std::vector<float> vector;
  std::size_t dim = 0;

  while (reader.next(line)) {
    if (is_blank(line)) continue;
    split_fields(line, fields);
    const std::size_t n = reader.number();

    if (dim == 0) {
      std::size_t count = 0;
      std::size_t header_dim = 0;
      if (fields.size() == 2 && parse_number(fields[0], count) &&
          parse_number(fields[1], header_dim) && header_dim > 1) {
        dim = header_dim;
        result.table = EmbeddingTable(dim);
        continue;
      }
      if (fields.size() < 2) {
        throw FormatError(line_error(n, "expected a token followed by values"));
      }
      dim = fields.size() - 1;
      result.table = EmbeddingTable(dim);
    }

    if (fields.size() != dim + 1) {
      throw FormatError(line_error(n, "expected " + std::to_string(dim) +
                                          " values, found " +
                                          std::to_string(fields.size() - 1)));
    }
    vector.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!parse_number(fields[j + 1], vector[j]) || !std::isfinite(vector[j])) {
        throw FormatError(line_error(
            n, "unparsable value '" + std::string(fields[j + 1]) + "'"));
      }
    }
    if (result.table.insert(std::string(fields[0]), vector)) ++result.duplicates;
  }

  if (dim == 0) throw FormatError("no embedding lines; dimension cannot be inferred");
  return result;
}

GloveLoadResult load_glove(const std::filesystem::path& path) {
  auto text = read_file(path);
  try {
    return parse_glove(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string emit_glove(const EmbeddingTable& table) {
  std::string out;
  char buffer[64];
  for (const auto& token : table.tokens()) {
    out += token;
    for (float v : table.lookup(token)) {
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
      out += ' ';
      out.append(buffer, ptr);
    }
    out += '\n';
  }
  return out;
}

EmbedStats& EmbedStats::operator+=(const EmbedStats& other) {
  sentences += other.sentences;
  all_oov += other.all_oov;
  tokens += other.tokens;
  oov_tokens += other.oov_tokens;
  return *this;
}

std::vector<double> embed_sentence(const TokenSeq& tokens,
                                   const EmbeddingTable& table,
                                   EmbedStats* stats) {
  std::vector<double> sum(table.dim(), 0.0);
  std::size_t hits = 0;
  for (const auto& token : tokens) {
    auto vec = table.lookup(token);
    if (vec.empty()) continue;
    for (std::size_t j = 0; j < vec.size(); ++j) sum[j] += vec[j];
    ++hits;
  }
  if (hits > 0) {
    for (auto& v : sum) v /= static_cast<double>(hits);
  }
  if (stats != nullptr) {
    ++stats->sentences;
    stats->tokens += tokens.size();
    stats->oov_tokens += tokens.size() - hits;
    if (hits == 0) ++stats->all_oov;
  }
  return sum;
}

std::vector<double> embed_context(std::span<const TokenSeq> context,
                                  const EmbeddingTable& table,
                                  EmbedStats* stats) {
  TokenSeq joined;
  for (const auto& turn : context) joined.insert(joined.end(), turn.begin(), turn.end());
  return embed_sentence(joined, table, stats);
}

std::string_view to_string(Layout layout) {
  return layout == Layout::ContextThenResponse ? "both" : "response";
}

Layout parse_layout(std::string_view name) {
  if (name == "both" || name == "CONTEXT_THEN_RESPONSE") {
    return Layout::ContextThenResponse;
  }
  if (name == "response" || name == "RESPONSE_ONLY") return Layout::ResponseOnly;
  throw ValidationError("unknown layout '" + std::string(name) + "'");
}

FeatureVector make_feature(std::span<const double> context_vec,
                           std::span<const double> response_vec, Layout layout) {
  FeatureVector feature;
  feature.layout = layout;
  if (layout == Layout::ResponseOnly) {
    feature.values.assign(response_vec.begin(), response_vec.end());
    return feature;
  }
  if (context_vec.size() != response_vec.size()) {
    throw ValidationError("context vector has " + std::to_string(context_vec.size()) +
                          " components but response vector has " +
                          std::to_string(response_vec.size()));
  }
  feature.values.reserve(context_vec.size() + response_vec.size());
  feature.values.assign(context_vec.begin(), context_vec.end());
  feature.values.insert(feature.values.end(), response_vec.begin(), response_vec.end());
  return feature;
}

std::vector<double> pad_sequence(std::span<const std::vector<double>> seq,
                                 std::size_t target_len,
                                 std::span<const double> pad) {
  if (target_len == 0) throw ValidationError("target_len must be >= 1");
  const std::size_t dim = pad.size();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].size() != dim) {
      throw ValidationError("sequence element " + std::to_string(i) + " has " +
                            std::to_string(seq[i].size()) + " components, expected " +
                            std::to_string(dim));
    }
  }
  std::vector<double> out;
  out.reserve(target_len * dim);
  for (std::size_t i = 0; i < target_len; ++i) {
    const auto& row = i < seq.size() ? std::span<const double>(seq[i]) : pad;
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<double> resize_sequence(std::span<const double> flat, std::size_t dim,
                                    std::size_t to_len) {
  if (dim == 0 || flat.size() % dim != 0) {
    throw ValidationError("flattened sequence length " + std::to_string(flat.size()) +
                          " is not a multiple of dim " + std::to_string(dim));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < flat.size(); i += dim) {
    rows.emplace_back(flat.begin() + i, flat.begin() + i + dim);
  }
  std::vector<double> pad(dim, 0.0);
  return pad_sequence(rows, to_len, pad);
}

std::string_view to_string(BertMode mode) {
  return mode == BertMode::Pooled ? "POOLED" : "SEQUENCE";
}

BertMode parse_bert_mode(std::string_view name) {
  if (name == "POOLED" || name == "pooled") return BertMode::Pooled;
  if (name == "SEQUENCE" || name == "sequence") return BertMode::Sequence;
  throw ValidationError("unknown BERT mode '" + std::string(name) + "'");
}

PrecomputedStore parse_precomputed(std::string_view text) {
  PrecomputedStore store;
  LineReader reader(text);
  std::string_view line;
  std::vector<std::string_view> fields;

  bool header = false;
  while (!header && reader.next(line)) {
    if (is_blank(line)) continue;
    split_fields(line, fields);
    bool have_dim = false;
    bool have_len = false;
    for (auto field : fields) {
      auto eq = field.find('=');
      if (eq == std::string_view::npos) {
        throw FormatError(line_error(reader.number(), "malformed header field '" +
                                                          std::string(field) + "'"));
      }
      auto key = field.substr(0, eq);
      auto value = field.substr(eq + 1);
      if (key == "dim") {
        have_dim = parse_number(value, store.dim) && store.dim > 0;
      } else if (key == "mode") {
        try {
          store.mode = parse_bert_mode(value);
        } catch (const ValidationError& e) {
          throw FormatError(line_error(reader.number(), e.what()));
        }
      } else if (key == "len") {
        have_len = parse_number(value, store.len) && store.len > 0;
      } else {
        throw FormatError(line_error(reader.number(),
                                     "unknown header key '" + std::string(key) + "'"));
      }
    }
    if (!have_dim) throw FormatError(line_error(reader.number(), "header lacks dim=<D>"));
    if (store.mode == BertMode::Sequence && !have_len) {
      throw FormatError(line_error(reader.number(), "SEQUENCE header lacks len=<L>"));
    }
    if (store.mode == BertMode::Pooled) store.len = 1;
    header = true;
  }
  if (!header) throw FormatError("missing header line");

  const std::size_t width = store.width();
  std::vector<std::string> order;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    split_fields(line, fields);
    const std::size_t n = reader.number();
    if (fields.size() < 2 || (fields[1] != "C" && fields[1] != "R")) {
      throw FormatError(line_error(n, "expected '<key> <C|R> values'"));
    }
    if (fields.size() - 2 != width) {
      throw FormatError(line_error(n, "expected " + std::to_string(width) +
                                          " values, found " +
                                          std::to_string(fields.size() - 2)));
    }
    std::string key(fields[0]);
    const bool is_context = fields[1] == "C";
    auto [it, inserted] = store.entries.try_emplace(key);
    if (inserted) order.push_back(key);
    auto& target = is_context ? it->second.context : it->second.response;
    if (!target.empty()) {
      throw FormatError(line_error(n, std::string("duplicate ") + (is_context ? "C" : "R") +
                                          " vector for " + key));
    }
    target.resize(width);
    for (std::size_t j = 0; j < width; ++j) {
      if (!parse_number(fields[j + 2], target[j]) || !std::isfinite(target[j])) {
        throw FormatError(line_error(
            n, "unparsable value '" + std::string(fields[j + 2]) + "'"));
      }
    }
  }

  for (const auto& key : order) {
    const auto& entry = store.entries.at(key);
    if (entry.context.empty()) throw FormatError("missing C vector for " + key);
    if (entry.response.empty()) throw FormatError("missing R vector for " + key);
  }
  return store;
}

PrecomputedStore load_precomputed(const std::filesystem::path& path) {
  auto text = read_file(path);
  try {
    return parse_precomputed(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_vector_line(std::string_view key, char tag,
                               std::span<const double> values) {
  std::string out(key);
  out += ' ';
  out += tag;
  char buffer[64];
  for (double v : values) {
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    out += ' ';
    out.append(buffer, ptr);
  }
  out += '\n';
  return out;
}

}  // namespace sarcasm
