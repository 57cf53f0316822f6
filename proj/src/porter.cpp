#include "sarcasm/porter.hpp"

#include <array>
#include <utility>

namespace sarcasm {

namespace {

// Working state over a single word. `end_` is one past the last letter of
// the current word; `stem_end_` marks where a matched suffix begins.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word), end_(word.size()) {}

  std::string run() {
    if (end_ <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_.substr(0, end_);
  }

 private:
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, stem_end_).
  int measure() const {
    int m = 0;
    std::size_t i = 0;
    const std::size_t j = stem_end_;
    while (i < j && consonant(i)) ++i;
    while (i < j) {
      while (i < j && !consonant(i)) ++i;
      if (i >= j) break;
      while (i < j && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool stem_has_vowel() const {
    for (std::size_t i = 0; i < stem_end_; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  // *d: stem ends with a double consonant.
  bool double_consonant(std::size_t end) const {
    if (end < 2) return false;
    return b_[end - 1] == b_[end - 2] && consonant(end - 1);
  }

  // *o: stem ends cvc where the final c is not w, x or y.
  bool cvc(std::size_t end) const {
    if (end < 3) return false;
    if (!consonant(end - 1) || consonant(end - 2) || !consonant(end - 3)) {
      return false;
    }
    char c = b_[end - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) {
    if (suffix.size() > end_) return false;
    if (std::string_view(b_).substr(end_ - suffix.size(), suffix.size()) !=
        suffix) {
      return false;
    }
    stem_end_ = end_ - suffix.size();
    return true;
  }

  void set_to(std::string_view replacement) {
    b_.replace(stem_end_, end_ - stem_end_, replacement);
    end_ = stem_end_ + replacement.size();
    b_.resize(end_);
  }

  void step1a() {
    if (ends("sses")) {
      set_to("ss");
    } else if (ends("ies")) {
      set_to("i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      set_to("");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure() > 0) set_to("ee");
      return;
    }
    bool stripped = false;
    if (ends("ed") && stem_has_vowel()) {
      set_to("");
      stripped = true;
    } else if (ends("ing") && stem_has_vowel()) {
      set_to("");
      stripped = true;
    }
    if (!stripped) return;

    if (ends("at")) {
      set_to("ate");
    } else if (ends("bl")) {
      set_to("ble");
    } else if (ends("iz")) {
      set_to("ize");
    } else if (double_consonant(end_)) {
      char c = b_[end_ - 1];
      if (c != 'l' && c != 's' && c != 'z') {
        --end_;
        b_.resize(end_);
      }
    } else {
      stem_end_ = end_;
      if (measure() == 1 && cvc(end_)) {
        b_ += 'e';
        ++end_;
      }
    }
  }

  void step1c() {
    if (ends("y") && stem_has_vowel()) set_to("i");
  }

  using Rule = std::pair<std::string_view, std::string_view>;

  // Only the longest matching suffix is considered; if its condition fails
  // the step leaves the word alone.
  template <std::size_t N>
  void apply_longest(const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& rule : rules) {
      if ((best == nullptr || rule.first.size() > best->first.size()) &&
          ends(rule.first)) {
        best = &rule;
      }
    }
    if (best == nullptr) return;
    ends(best->first);
    if (measure() > min_measure) set_to(best->second);
  }

  void step2() {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_longest(rules, 0);
  }

  void step3() {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"},
        {"ative", ""},
        {"alize", "al"},
        {"iciti", "ic"},
        {"ical", "ic"},
        {"ful", ""},
        {"ness", ""},
    }};
    apply_longest(rules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible",
        "ant", "ement", "ment", "ent", "ion", "ou",   "ism",
        "ate", "iti",  "ous",  "ive", "ize"};
    std::string_view best;
    for (auto s : suffixes) {
      if (s.size() > best.size() && ends(s)) best = s;
    }
    if (best.empty()) return;
    ends(best);
    if (best == "ion") {
      if (stem_end_ == 0 || (b_[stem_end_ - 1] != 's' && b_[stem_end_ - 1] != 't')) {
        return;
      }
    }
    if (measure() > 1) set_to("");
  }

  void step5a() {
    if (!ends("e")) return;
    int m = measure();
    if (m > 1 || (m == 1 && !cvc(stem_end_))) set_to("");
  }

  void step5b() {
    stem_end_ = end_;
    if (measure() > 1 && double_consonant(end_) && b_[end_ - 1] == 'l') {
      --end_;
      b_.resize(end_);
    }
  }

  std::string b_;
  std::size_t end_;
  std::size_t stem_end_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(word).run(); }

}  // namespace sarcasm
