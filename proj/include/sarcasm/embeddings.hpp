#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sarcasm/preprocess.hpp"

namespace sarcasm {

// Token -> fixed-dimension vector map. Vectors are stored as float in one
// contiguous block, matching the precision of published GloVe files.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view token) const;

  // Empty span when the token is out of vocabulary.
  std::span<const float> lookup(std::string_view token) const;

  // Inserts or overwrites. Returns true if the token was already present.
  bool insert(std::string token, std::span<const float> vector);

  // Tokens in insertion order (first occurrence).
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

struct GloveLoadResult {
  EmbeddingTable table;
  std::size_t duplicates = 0;
};

// Text format: `token v1 ... vdim` per line. A leading word2vec-style
// `<count> <dim>` header line is accepted and skipped.
GloveLoadResult load_glove(const std::filesystem::path& path);
GloveLoadResult parse_glove(std::string_view text);

// Writes the table back out using shortest round-trip float formatting.
std::string emit_glove(const EmbeddingTable& table);

struct EmbedStats {
  std::size_t sentences = 0;
  std::size_t all_oov = 0;
  std::size_t tokens = 0;
  std::size_t oov_tokens = 0;

  EmbedStats& operator+=(const EmbedStats& other);
};

// Mean of the in-vocabulary token vectors; zeros when none are known.
std::vector<double> embed_sentence(const TokenSeq& tokens,
                                   const EmbeddingTable& table,
                                   EmbedStats* stats = nullptr);

// Turns are appended earliest first and pooled as one sentence.
std::vector<double> embed_context(std::span<const TokenSeq> context,
                                  const EmbeddingTable& table,
                                  EmbedStats* stats = nullptr);

enum class Layout { ContextThenResponse, ResponseOnly };

std::string_view to_string(Layout layout);
Layout parse_layout(std::string_view name);

struct FeatureVector {
  std::vector<double> values;
  Layout layout = Layout::ContextThenResponse;
};

FeatureVector make_feature(std::span<const double> context_vec,
                           std::span<const double> response_vec, Layout layout);

// Row-major flattening of `seq` truncated or right-padded to `target_len`
// rows of `pad.size()` values.
std::vector<double> pad_sequence(std::span<const std::vector<double>> seq,
                                 std::size_t target_len,
                                 std::span<const double> pad);

enum class BertMode { Pooled, Sequence };

std::string_view to_string(BertMode mode);
BertMode parse_bert_mode(std::string_view name);

// Per-record context and response vectors produced by the external
// extractor. In SEQUENCE mode each vector is `len` rows of `dim` values.
struct PrecomputedStore {
  struct Entry {
    std::vector<double> context;
    std::vector<double> response;
  };

  std::size_t dim = 0;
  BertMode mode = BertMode::Pooled;
  std::size_t len = 1;
  std::unordered_map<std::string, Entry> entries;

  std::size_t width() const { return mode == BertMode::Pooled ? dim : dim * len; }
};

PrecomputedStore load_precomputed(const std::filesystem::path& path);
PrecomputedStore parse_precomputed(std::string_view text);

// Re-pads a SEQUENCE-mode flattened vector of `from_len` rows to `to_len`.
std::vector<double> resize_sequence(std::span<const double> flat,
                                    std::size_t dim, std::size_t to_len);

// `<key> <tag> f1 ... fK` with shortest round-trip formatting.
std::string format_vector_line(std::string_view key, char tag,
                               std::span<const double> values);

}  // namespace sarcasm
