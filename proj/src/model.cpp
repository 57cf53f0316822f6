#include "sarcasm/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sarcasm/error.hpp"
#include "sarcasm/kernels.hpp"

namespace sarcasm {

using nlohmann::json;

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression: return "lr";
    case ModelKind::LinearSvc: return "lsvc";
    case ModelKind::GaussianNb: return "gnb";
    case ModelKind::RandomForest: return "rf";
  }
  return "";
}

std::string_view display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression: return "Logistic Regression";
    case ModelKind::LinearSvc: return "Linear Support Vector Classifier";
    case ModelKind::GaussianNb: return "Gaussian Naive Bayes";
    case ModelKind::RandomForest: return "Random Forest";
  }
  return "";
}

ModelKind parse_model_kind(std::string_view tag) {
  for (auto kind : kAllModelKinds) {
    if (to_string(kind) == tag) return kind;
  }
  throw ValidationError("unknown model kind '" + std::string(tag) + "'");
}

json to_json(const Hyperparameters& hp) {
  json j;
  j["lr"] = {{"lr0", hp.lr.lr0}, {"epochs", hp.lr.epochs}, {"l2", hp.lr.l2},
             {"tol", hp.lr.tol}};
  j["lsvc"] = {{"lambda", hp.lsvc.lambda}, {"epochs", hp.lsvc.epochs},
               {"eta0", hp.lsvc.eta0}};
  j["rf"] = {{"n_trees", hp.rf.n_trees},   {"max_depth", hp.rf.max_depth},
             {"min_leaf", hp.rf.min_leaf}, {"mtry", hp.rf.mtry},
             {"bootstrap", hp.rf.bootstrap}};
  j["standardize"] = hp.standardize ? json(*hp.standardize) : json(nullptr);
  j["seed"] = hp.seed;
  return j;
}

Hyperparameters hyperparameters_from_json(const json& j) {
  Hyperparameters hp;
  if (auto it = j.find("lr"); it != j.end()) {
    hp.lr.lr0 = it->value("lr0", hp.lr.lr0);
    hp.lr.epochs = it->value("epochs", hp.lr.epochs);
    hp.lr.l2 = it->value("l2", hp.lr.l2);
    hp.lr.tol = it->value("tol", hp.lr.tol);
  }
  if (auto it = j.find("lsvc"); it != j.end()) {
    hp.lsvc.lambda = it->value("lambda", hp.lsvc.lambda);
    hp.lsvc.epochs = it->value("epochs", hp.lsvc.epochs);
    hp.lsvc.eta0 = it->value("eta0", hp.lsvc.eta0);
  }
  if (auto it = j.find("rf"); it != j.end()) {
    hp.rf.n_trees = it->value("n_trees", hp.rf.n_trees);
    hp.rf.max_depth = it->value("max_depth", hp.rf.max_depth);
    hp.rf.min_leaf = it->value("min_leaf", hp.rf.min_leaf);
    hp.rf.mtry = it->value("mtry", hp.rf.mtry);
    hp.rf.bootstrap = it->value("bootstrap", hp.rf.bootstrap);
  }
  if (auto it = j.find("standardize"); it != j.end() && !it->is_null()) {
    hp.standardize = it->get<bool>();
  }
  hp.seed = j.value("seed", hp.seed);
  return hp;
}

TrainedModel fit_model(ModelKind kind, const LabeledMatrix& data,
                       const Hyperparameters& hp) {
  validate_training_data(data, true);
  TrainedModel model;
  model.kind = kind;
  model.dim = data.dim();
  model.seed = hp.seed;
  model.train_config = {{"hyperparameters", to_json(hp)}};

  const bool standardize = hp.standardize.value_or(
      kind == ModelKind::LogisticRegression || kind == ModelKind::LinearSvc);
  const LabeledMatrix* fit_data = &data;
  LabeledMatrix scaled;
  if (standardize) {
    model.scaler = fit_scaler(data.features);
    scaled.features = model.scaler->apply(data.features);
    scaled.labels = data.labels;
    fit_data = &scaled;
  }

  switch (kind) {
    case ModelKind::LogisticRegression: {
      auto cfg = hp.lr;
      cfg.seed = hp.seed;
      model.params = fit_logistic(*fit_data, cfg);
      break;
    }
    case ModelKind::LinearSvc: {
      auto cfg = hp.lsvc;
      cfg.seed = hp.seed;
      model.params = fit_linear_svc(*fit_data, cfg);
      break;
    }
    case ModelKind::GaussianNb:
      model.params = fit_gaussian_nb(*fit_data);
      break;
    case ModelKind::RandomForest: {
      auto cfg = hp.rf;
      cfg.seed = hp.seed;
      model.params = fit_random_forest(*fit_data, cfg);
      break;
    }
  }
  return model;
}

namespace {

void check_dim(const TrainedModel& model, std::size_t got) {
  if (got != model.dim) {
    throw ValidationError("expected d=" + std::to_string(model.dim) + ", got " +
                          std::to_string(got));
  }
}

Prediction predict_scaled(const TrainedModel& model, std::span<const double> x) {
  Prediction out;
  switch (model.kind) {
    case ModelKind::LogisticRegression:
    case ModelKind::LinearSvc: {
      out.score = std::get<LinearParams>(model.params).score(x);
      out.label = label_from_score(out.score);
      if (model.kind == ModelKind::LogisticRegression) {
        out.probability = kernels::sigmoid(out.score);
      }
      break;
    }
    case ModelKind::GaussianNb: {
      auto p = predict_gaussian_nb(std::get<GaussianNbParams>(model.params), x);
      out.label = p.label;
      out.score = p.log_posterior[1] - p.log_posterior[0];
      break;
    }
    case ModelKind::RandomForest: {
      auto p = predict_random_forest(std::get<ForestParams>(model.params), x);
      out.label = p.label;
      out.score = p.vote_fraction;
      break;
    }
  }
  return out;
}

}  // namespace

Prediction predict(const TrainedModel& model, std::span<const double> x) {
  check_dim(model, x.size());
  if (model.scaler) return predict_scaled(model, model.scaler->apply(x));
  return predict_scaled(model, x);
}

std::vector<Prediction> predict_batch(const TrainedModel& model, const Matrix& x) {
  if (x.rows() == 0) return {};
  check_dim(model, x.cols());
  const Matrix* input = &x;
  Matrix scaled;
  if (model.scaler) {
    scaled = model.scaler->apply(x);
    input = &scaled;
  }
  std::vector<Prediction> out(x.rows());
  const auto rows = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) out[i] = predict_scaled(model, input->row(i));
  return out;
}

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ValidationError(std::string("cannot save model: non-finite ") + what);
    }
  }
}

json linear_to_json(const LinearParams& p) {
  require_finite(p.w, "weight");
  require_finite(std::span<const double>(&p.b, 1), "bias");
  return {{"w", p.w}, {"b", p.b}};
}

json gnb_to_json(const GaussianNbParams& p) {
  for (int c = 0; c < 2; ++c) {
    require_finite(p.mean[c], "mean");
    require_finite(p.var[c], "variance");
  }
  return {{"prior", p.prior},
          {"mean", {p.mean[0], p.mean[1]}},
          {"var", {p.var[0], p.var[1]}},
          {"epsilon", p.epsilon}};
}

json forest_to_json(const ForestParams& p) {
  json trees = json::array();
  for (const auto& tree : p.trees) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.negatives, n.positives});
    }
    trees.push_back(std::move(nodes));
  }
  return {{"trees", std::move(trees)}};
}

std::vector<double> vector_of(const json& j, std::size_t expected, const char* what) {
  auto v = j.get<std::vector<double>>();
  if (v.size() != expected) {
    throw FormatError(std::string(what) + " has " + std::to_string(v.size()) +
                      " components, expected " + std::to_string(expected));
  }
  return v;
}

}  // namespace

json model_to_json(const TrainedModel& model) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = std::string(to_string(model.kind));
  j["d"] = model.dim;
  if (model.scaler) {
    j["scaler"] = {{"mean", model.scaler->mean}, {"std", model.scaler->std}};
  } else {
    j["scaler"] = nullptr;
  }
  j["params"] = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinearParams>) {
          return linear_to_json(p);
        } else if constexpr (std::is_same_v<T, GaussianNbParams>) {
          return gnb_to_json(p);
        } else {
          return forest_to_json(p);
        }
      },
      model.params);
  j["seed"] = model.seed;
  j["train_config"] = model.train_config;
  return j;
}

TrainedModel model_from_json(const json& j) {
  try {
    if (!j.is_object()) throw FormatError("model document is not an object");
    if (j.at("format_version").get<int>() != kModelFormatVersion) {
      throw FormatError("unsupported model format_version " +
                        j.at("format_version").dump());
    }
    TrainedModel model;
    const auto tag = j.at("kind").get<std::string>();
    try {
      model.kind = parse_model_kind(tag);
    } catch (const ValidationError&) {
      throw FormatError("unknown model kind '" + tag + "'");
    }
    model.dim = j.at("d").get<std::size_t>();
    if (model.dim == 0) throw FormatError("model dimension is zero");
    model.seed = j.at("seed").get<std::uint64_t>();
    model.train_config = j.at("train_config");

    const auto& sj = j.at("scaler");
    if (!sj.is_null()) {
      Scaler s;
      s.mean = vector_of(sj.at("mean"), model.dim, "scaler mean");
      s.std = vector_of(sj.at("std"), model.dim, "scaler std");
      for (double v : s.std) {
        if (!(v > 0.0)) throw FormatError("scaler std must be positive");
      }
      model.scaler = std::move(s);
    }

    const auto& pj = j.at("params");
    switch (model.kind) {
      case ModelKind::LogisticRegression:
      case ModelKind::LinearSvc: {
        LinearParams p;
        p.w = vector_of(pj.at("w"), model.dim, "weights");
        p.b = pj.at("b").get<double>();
        model.params = std::move(p);
        break;
      }
      case ModelKind::GaussianNb: {
        GaussianNbParams p;
        p.prior = pj.at("prior").get<std::array<double, 2>>();
        for (std::size_t c = 0; c < 2; ++c) {
          p.mean[c] = vector_of(pj.at("mean").at(c), model.dim, "class mean");
          p.var[c] = vector_of(pj.at("var").at(c), model.dim, "class variance");
          for (double v : p.var[c]) {
            if (!(v > 0.0)) throw FormatError("class variance must be positive");
          }
        }
        p.epsilon = pj.at("epsilon").get<double>();
        model.params = std::move(p);
        break;
      }
      case ModelKind::RandomForest: {
        ForestParams p;
        for (const auto& tj : pj.at("trees")) {
          DecisionTree tree;
          for (const auto& nj : tj) {
            TreeNode n;
            n.feature = nj.at(0).get<int>();
            n.threshold = nj.at(1).get<double>();
            n.left = nj.at(2).get<int>();
            n.right = nj.at(3).get<int>();
            n.negatives = nj.at(4).get<std::uint32_t>();
            n.positives = nj.at(5).get<std::uint32_t>();
            tree.nodes.push_back(n);
          }
          const int count = static_cast<int>(tree.nodes.size());
          if (count == 0) throw FormatError("empty decision tree");
          for (const auto& n : tree.nodes) {
            if (n.is_leaf()) continue;
            if (static_cast<std::size_t>(n.feature) >= model.dim ||
                n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count) {
              throw FormatError("decision tree node out of range");
            }
          }
          p.trees.push_back(std::move(tree));
        }
        if (p.trees.empty()) throw FormatError("forest has no trees");
        model.params = std::move(p);
        break;
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw FormatError(std::string("corrupted model document: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const auto text = model_to_json(model).dump(1) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model " + path.string());
  out << text;
  if (!out) throw IoError("failed writing model " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read model " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": corrupted model file: " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace sarcasm
