#include "sarcasm/featurize.hpp"

#include <exception>

#include "sarcasm/error.hpp"

namespace sarcasm {

namespace {

struct RecordFeatures {
  std::vector<double> values;
  EmbedStats stats;
};

RecordFeatures glove_record(const Record& record, const EmbeddingTable& table,
                            Layout layout, const PipelineConfig& pipeline) {
  RecordFeatures out;
  auto response = embed_sentence(preprocess_text(record.response, pipeline), table,
                                 &out.stats);
  std::vector<double> context;
  if (layout == Layout::ContextThenResponse) {
    std::vector<TokenSeq> turns;
    turns.reserve(record.context.size());
    for (const auto& turn : record.context) turns.push_back(preprocess_text(turn, pipeline));
    context = embed_context(turns, table, &out.stats);
  }
  out.values = make_feature(context, response, layout).values;
  return out;
}

RecordFeatures precomputed_record(const Record& record, const PrecomputedSource& source,
                                  Layout layout) {
  const auto& store = *source.store;
  const auto key = record_key(record);
  auto it = store.entries.find(key);
  if (it == store.entries.end()) {
    throw ValidationError("no precomputed vectors for record " + key);
  }
  RecordFeatures out;
  if (store.mode == BertMode::Sequence && source.seq_len != store.len) {
    auto context = resize_sequence(it->second.context, store.dim, source.seq_len);
    auto response = resize_sequence(it->second.response, store.dim, source.seq_len);
    out.values = make_feature(context, response, layout).values;
  } else {
    out.values = make_feature(it->second.context, it->second.response, layout).values;
  }
  return out;
}

}  // namespace

LabeledMatrix FeatureSet::labeled() const {
  LabeledMatrix out;
  out.features = features;
  out.labels.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw ValidationError("record " + keys[i] + " has no label");
    out.labels.push_back(*labels[i]);
  }
  return out;
}

std::size_t feature_length(const FeatureSource& source, Layout layout) {
  const std::size_t block = std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GloveSource>) {
          return s.table->dim();
        } else {
          return s.store->mode == BertMode::Sequence ? s.store->dim * s.seq_len
                                                     : s.store->dim;
        }
      },
      source);
  return layout == Layout::ContextThenResponse ? 2 * block : block;
}

FeatureSet featurize(const Dataset& dataset, const FeatureSource& source,
                     Layout layout, const PipelineConfig& pipeline, bool parallel) {
  const auto& records = dataset.records;
  const std::size_t n = records.size();
  const std::size_t width = feature_length(source, layout);

  PipelineConfig config = pipeline;
  const auto* glove = std::get_if<GloveSource>(&source);
  if (glove != nullptr && !config.vocabulary) {
    auto table = glove->table;
    config.vocabulary = [table](std::string_view token) { return table->contains(token); };
  }

  std::vector<RecordFeatures> rows(n);
  auto one = [&](std::size_t i) {
    if (glove != nullptr) {
      rows[i] = glove_record(records[i], *glove->table, layout, config);
    } else {
      rows[i] = precomputed_record(records[i], std::get<PrecomputedSource>(source), layout);
    }
  };

  if (parallel) {
    // Exceptions may not escape an OpenMP region; keep the first by index.
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        one(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) one(i);
  }

  FeatureSet out;
  out.features = Matrix(n, width);
  out.keys.reserve(n);
  out.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(rows[i].values.begin(), rows[i].values.end(), out.features.row(i).begin());
    out.keys.push_back(record_key(records[i]));
    out.labels.push_back(records[i].label);
    out.stats += rows[i].stats;
  }
  return out;
}

}  // namespace sarcasm
