#pragma once

#include <string_view>

namespace sarcasm::resources {

extern const std::string_view kStopwords;
extern const std::string_view kSlang;
extern const std::string_view kEmoticons;

}  // namespace sarcasm::resources
