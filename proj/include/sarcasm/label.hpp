#pragma once

#include <optional>
#include <string_view>

namespace sarcasm {

// SARCASM is the positive class and encodes as +1.
enum class Label : int { NotSarcasm = -1, Sarcasm = 1 };

inline constexpr double sign_of(Label label) {
  return label == Label::Sarcasm ? 1.0 : -1.0;
}

inline constexpr std::string_view to_string(Label label) {
  return label == Label::Sarcasm ? "SARCASM" : "NOT_SARCASM";
}

inline std::optional<Label> parse_label(std::string_view text) {
  if (text == "SARCASM") return Label::Sarcasm;
  if (text == "NOT_SARCASM") return Label::NotSarcasm;
  return std::nullopt;
}

// Exact ties always resolve to the negative class.
inline constexpr Label label_from_score(double score) {
  return score > 0.0 ? Label::Sarcasm : Label::NotSarcasm;
}

}  // namespace sarcasm
