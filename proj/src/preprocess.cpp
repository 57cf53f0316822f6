#include "sarcasm/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sarcasm/error.hpp"
#include "sarcasm/porter.hpp"
#include "resources.hpp"

namespace sarcasm {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

const std::string* find(const StringMap& map, const std::string& key) {
  auto it = map.find(key);
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view to_string(Step step) {
  switch (step) {
    case Step::Tokenize: return "tokenize";
    case Step::CaseFold: return "case_fold";
    case Step::StopwordRemove: return "stopword_remove";
    case Step::Normalize: return "normalize";
    case Step::NoiseRemove: return "noise_remove";
    case Step::Stem: return "stem";
  }
  return "";
}

Step parse_step(std::string_view name) {
  for (auto step : kAllSteps) {
    if (to_string(step) == name) return step;
  }
  throw ValidationError("unknown preprocessing step '" + std::string(name) + "'");
}

bool PipelineConfig::has_step(Step step) const {
  return std::find(steps.begin(), steps.end(), step) != steps.end();
}

void PipelineConfig::validate() const {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (static_cast<int>(steps[i]) <= static_cast<int>(steps[i - 1])) {
      throw ValidationError("preprocessing steps must follow the canonical order");
    }
  }
  if (max_repeat < 1) throw ValidationError("max_repeat must be >= 1");
  auto check_values = [](const StringMap& map, const char* what) {
    for (const auto& [key, value] : map) {
      bool ok = !value.empty() &&
                std::all_of(value.begin(), value.end(), [](char c) {
                  return c >= 'a' && c <= 'z';
                });
      if (!ok) {
        throw ValidationError(std::string(what) + " value for '" + key +
                              "' is not lowercase alphabetic");
      }
    }
  };
  check_values(slang_map, "slang");
  check_values(emoticon_map, "emoticon");
}

StringSet parse_word_list(std::string_view text) {
  StringSet words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto word = trim(line);
    if (!word.empty() && word.front() != '#') words.insert(to_lower_ascii(word));
  }
  return words;
}

StringMap parse_tab_map(std::string_view text, std::string_view origin) {
  StringMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(std::string(origin) + ": line " + std::to_string(n) +
                        ": expected key<TAB>value");
    }
    auto key = trim(std::string_view(line).substr(0, tab));
    auto value = trim(std::string_view(line).substr(tab + 1));
    if (key.empty() || value.empty()) {
      throw FormatError(std::string(origin) + ": line " + std::to_string(n) +
                        ": empty key or value");
    }
    map[to_lower_ascii(key)] = std::string(value);
  }
  return map;
}

StringSet load_word_list(const std::filesystem::path& path) {
  return parse_word_list(read_file(path));
}

StringMap load_tab_map(const std::filesystem::path& path) {
  return parse_tab_map(read_file(path), path.string());
}

PipelineConfig default_pipeline_config() {
  PipelineConfig config;
  config.stopwords = parse_word_list(resources::kStopwords);
  config.slang_map = parse_tab_map(resources::kSlang, "builtin slang");
  config.emoticon_map = parse_tab_map(resources::kEmoticons, "builtin emoticons");
  return config;
}

TokenSeq tokenize(std::string_view text, const StringMap& emoticon_map) {
  TokenSeq tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::string_view piece = text.substr(start, i - start);
    if (piece.empty()) continue;

    if (emoticon_map.contains(to_lower_ascii(piece))) {
      tokens.emplace_back(piece);
      continue;
    }
    while (!piece.empty() && is_punct(piece.back())) piece.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < piece.size() && is_punct(piece[lead])) {
      if (piece[lead] == '#' && lead + 1 < piece.size() && !is_punct(piece[lead + 1])) {
        break;
      }
      ++lead;
    }
    piece.remove_prefix(lead);
    if (!piece.empty()) tokens.emplace_back(piece);
  }
  return tokens;
}

TokenSeq case_fold(TokenSeq tokens) {
  for (auto& token : tokens) {
    std::size_t letters = 0;
    bool all_upper = true;
    for (char c : token) {
      if (!is_alpha(c)) continue;
      ++letters;
      all_upper = all_upper && is_upper(c);
    }
    if (!(all_upper && letters >= 2)) token = to_lower_ascii(token);
  }
  return tokens;
}

TokenSeq remove_stopwords(TokenSeq tokens, const StringSet& stopwords) {
  std::erase_if(tokens, [&](const std::string& token) {
    return stopwords.contains(to_lower_ascii(token));
  });
  return tokens;
}

std::string collapse_runs(std::string_view token, int max_run) {
  std::string out;
  out.reserve(token.size());
  int run = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    run = (i > 0 && token[i] == token[i - 1]) ? run + 1 : 1;
    if (run <= max_run) out += token[i];
  }
  return out;
}

TokenSeq normalize(TokenSeq tokens, const StringMap& slang_map,
                   const StringMap& emoticon_map, int max_repeat,
                   const VocabularyFn& vocabulary) {
  for (auto& token : tokens) {
    const std::string lower = to_lower_ascii(token);
    if (const auto* word = find(emoticon_map, lower)) {
      token = *word;
      continue;
    }
    if (const auto* word = find(slang_map, lower)) {
      token = *word;
      continue;
    }
    std::string collapsed = collapse_runs(token, max_repeat);
    if (collapsed == token) continue;

    std::string single = collapse_runs(token, 1);
    if (const auto* word = find(slang_map, to_lower_ascii(collapsed))) {
      token = *word;
    } else if (const auto* word1 = find(slang_map, to_lower_ascii(single))) {
      token = *word1;
    } else if (vocabulary && !vocabulary(collapsed) && vocabulary(single)) {
      token = std::move(single);
    } else {
      token = std::move(collapsed);
    }
  }
  return tokens;
}

TokenSeq remove_noise(TokenSeq tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string clean;
    for (std::size_t i = 0; i < token.size(); ++i) {
      char c = token[i];
      if ((c == '#' && i == 0) || (c != '#' && is_alnum(c) &&
                                   static_cast<unsigned char>(c) < 0x80)) {
        clean += c;
      }
    }
    if (!clean.empty() && clean != "#") out.push_back(std::move(clean));
  }
  return out;
}

TokenSeq stem(TokenSeq tokens) {
  for (auto& token : tokens) {
    bool plain = std::all_of(token.begin(), token.end(),
                             [](char c) { return c >= 'a' && c <= 'z'; });
    if (plain) token = porter_stem(token);
  }
  return tokens;
}

TokenSeq preprocess_text(std::string_view text, const PipelineConfig& config) {
  TokenSeq tokens;
  if (config.has_step(Step::Tokenize)) {
    tokens = tokenize(text, config.emoticon_map);
  } else {
    std::istringstream in{std::string(text)};
    std::string piece;
    while (in >> piece) tokens.push_back(piece);
  }
  if (config.has_step(Step::CaseFold)) tokens = case_fold(std::move(tokens));
  if (config.has_step(Step::StopwordRemove)) {
    tokens = remove_stopwords(std::move(tokens), config.stopwords);
  }
  if (config.has_step(Step::Normalize)) {
    tokens = normalize(std::move(tokens), config.slang_map, config.emoticon_map,
                       config.max_repeat, config.vocabulary);
  }
  if (config.has_step(Step::NoiseRemove)) tokens = remove_noise(std::move(tokens));
  if (config.has_step(Step::Stem)) tokens = stem(std::move(tokens));
  // Later steps can turn a survivor into a stopword ("th-e" -> "the").
  if (config.has_step(Step::StopwordRemove)) {
    tokens = remove_stopwords(std::move(tokens), config.stopwords);
  }
  return tokens;
}

}  // namespace sarcasm
