#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sarcasm/dataset.hpp"
#include "sarcasm/embeddings.hpp"
#include "sarcasm/matrix.hpp"
#include "sarcasm/preprocess.hpp"

namespace sarcasm {

struct GloveSource {
  std::shared_ptr<const EmbeddingTable> table;
};

struct PrecomputedSource {
  std::shared_ptr<const PrecomputedStore> store;
  // SEQUENCE mode only: rows per field after re-padding.
  std::size_t seq_len = 64;
};

using FeatureSource = std::variant<GloveSource, PrecomputedSource>;

struct FeatureSet {
  Matrix features;
  std::vector<std::string> keys;
  std::vector<std::optional<Label>> labels;
  EmbedStats stats;

  // Requires every record to be labeled.
  LabeledMatrix labeled() const;
};

// Length of one feature row for this source and layout.
std::size_t feature_length(const FeatureSource& source, Layout layout);

// Preprocesses and embeds every record. When a GloVe table is used and the
// pipeline has no vocabulary hook, the table arbitrates elongation collapse.
// Records are independent, so the parallel path gives identical output.
FeatureSet featurize(const Dataset& dataset, const FeatureSource& source,
                     Layout layout, const PipelineConfig& pipeline,
                     bool parallel = true);

}  // namespace sarcasm
