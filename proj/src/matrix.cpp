#include "sarcasm/matrix.hpp"

#include <algorithm>

namespace sarcasm {

void validate_training_data(const LabeledMatrix& data, bool require_both_classes) {
  if (data.features.rows() == 0) throw ValidationError("training data is empty");
  if (data.labels.size() != data.features.rows()) {
    throw ValidationError("labels (" + std::to_string(data.labels.size()) +
                          ") and rows (" + std::to_string(data.features.rows()) +
                          ") are misaligned");
  }
  if (data.features.cols() == 0) throw ValidationError("feature vectors are empty");
  if (require_both_classes) {
    auto positives = std::count(data.labels.begin(), data.labels.end(), Label::Sarcasm);
    if (positives == 0 || static_cast<std::size_t>(positives) == data.labels.size()) {
      throw ValidationError("training data must contain both classes");
    }
  }
}

}  // namespace sarcasm
