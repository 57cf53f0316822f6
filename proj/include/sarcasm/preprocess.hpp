#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sarcasm {

using TokenSeq = std::vector<std::string>;
using StringSet = std::unordered_set<std::string>;
using StringMap = std::unordered_map<std::string, std::string>;

// Canonical order; a pipeline runs any subsequence of it.
enum class Step { Tokenize, CaseFold, StopwordRemove, Normalize, NoiseRemove, Stem };

inline constexpr Step kAllSteps[] = {Step::Tokenize,       Step::CaseFold,
                                     Step::StopwordRemove, Step::Normalize,
                                     Step::NoiseRemove,    Step::Stem};

std::string_view to_string(Step step);
Step parse_step(std::string_view name);

// Vocabulary membership test used to arbitrate elongation collapse.
using VocabularyFn = std::function<bool(std::string_view)>;

struct PipelineConfig {
  StringSet stopwords;
  StringMap slang_map;
  // Keys are stored lowercase and matched case-insensitively.
  StringMap emoticon_map;
  std::vector<Step> steps{std::begin(kAllSteps), std::end(kAllSteps)};
  int max_repeat = 2;
  VocabularyFn vocabulary;

  bool has_step(Step step) const;

  // Throws ValidationError if steps are out of canonical order, max_repeat
  // is below 1, or a map value is not lowercase alphabetic.
  void validate() const;
};

// Built-in stopword, slang, and emoticon resources compiled from data/.
PipelineConfig default_pipeline_config();

StringSet load_word_list(const std::filesystem::path& path);
StringMap load_tab_map(const std::filesystem::path& path);
StringSet parse_word_list(std::string_view text);
StringMap parse_tab_map(std::string_view text, std::string_view origin);

TokenSeq tokenize(std::string_view text, const StringMap& emoticon_map = {});
TokenSeq case_fold(TokenSeq tokens);
TokenSeq remove_stopwords(TokenSeq tokens, const StringSet& stopwords);
TokenSeq normalize(TokenSeq tokens, const StringMap& slang_map,
                   const StringMap& emoticon_map, int max_repeat,
                   const VocabularyFn& vocabulary = {});
TokenSeq remove_noise(TokenSeq tokens);
TokenSeq stem(TokenSeq tokens);

TokenSeq preprocess_text(std::string_view text, const PipelineConfig& config);

// Collapses runs of one character longer than `max_run` down to `max_run`.
std::string collapse_runs(std::string_view token, int max_run);

std::string to_lower_ascii(std::string_view s);

}  // namespace sarcasm
