#include "leap/model.hpp"

#include <algorithm>
#include <cmath>

#include "leap/boosting.hpp"
#include "leap/error.hpp"
#include "leap/forest.hpp"
#include "leap/knn.hpp"
#include "leap/linear.hpp"
#include "leap/mlp.hpp"
#include "leap/naive_bayes.hpp"

namespace leap {

const std::vector<ModelSpec>& model_zoo() {
  static const std::vector<ModelSpec> zoo = {
      {ModelKind::logistic_regression, "LR", true, true},
      {ModelKind::random_forest, "RF", false, true},
      {ModelKind::extra_trees, "ExtraTrees", false, true},
      {ModelKind::gbdt, "GBDT", false, true},
      {ModelKind::adaboost, "AdaBoost", false, false},
      {ModelKind::knn, "kNN", true, false},
      {ModelKind::naive_bayes, "NB", false, false},
      {ModelKind::mlp, "MLP", true, false},
  };
  return zoo;
}

ModelSpec model_spec(ModelKind kind) {
  for (const auto& spec : model_zoo()) {
    if (spec.kind == kind) return spec;
  }
  throw ConfigError("unknown model kind");
}

ModelSpec parse_model_name(std::string_view name) {
  for (const auto& spec : model_zoo()) {
    if (spec.name == name) return spec;
  }
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected one of LR, RF, ExtraTrees, GBDT, AdaBoost, kNN, NB, MLP)");
}

std::vector<double> FittedModel::predict_proba(const Matrix& x) const {
  if (x.cols != n_features) {
    throw DataError("prediction input has " + std::to_string(x.cols) + " features, model expects " +
                    std::to_string(n_features));
  }
  if (scaler) {
    return model->predict_proba(scaler_apply(*scaler, x));
  }
  return model->predict_proba(x);
}

namespace {

void check_training_input(const Matrix& x, const std::vector<std::uint8_t>& y) {
  if (x.rows == 0 || x.cols == 0) throw DataError("empty training matrix");
  if (x.rows != y.size()) throw DataError("feature/label row count mismatch");
  std::size_t positives = 0;
  for (std::uint8_t v : y) {
    if (v > 1) throw DataError("labels must be 0 or 1");
    positives += v;
  }
  if (positives == 0 || positives == y.size()) {
    throw DataError("training requires both classes present");
  }
  for (const double v : x.data) {
    if (!std::isfinite(v)) throw DataError("non-finite value in training matrix");
  }
}

}  // namespace

FittedModel train_model(const ModelSpec& spec, const Matrix& x,
                        const std::vector<std::uint8_t>& y, std::uint64_t seed) {
  check_training_input(x, y);

  FittedModel fitted;
  fitted.spec = spec;
  fitted.seed = seed;
  fitted.n_train = x.rows;
  fitted.n_features = x.cols;
  double positives = 0.0;
  for (std::uint8_t v : y) positives += v;
  fitted.base_rate = positives / static_cast<double>(y.size());

  const Matrix* input = &x;
  Matrix standardized;
  if (spec.needs_standardization) {
    fitted.scaler = scaler_fit(x);
    standardized = scaler_apply(*fitted.scaler, x);
    input = &standardized;
  }

  switch (spec.kind) {
    case ModelKind::logistic_regression:
      fitted.model = std::make_unique<LogisticModel>(fit_logistic(*input, y, LogisticParams{}));
      break;
    case ModelKind::random_forest: {
      ForestParams params;
      params.bootstrap = true;
      params.thresholds = ThresholdRule::best;
      fitted.model = std::make_unique<ForestModel>(fit_forest(*input, y, seed, params));
      break;
    }
    case ModelKind::extra_trees: {
      ForestParams params;
      params.bootstrap = false;
      params.thresholds = ThresholdRule::random;
      fitted.model = std::make_unique<ForestModel>(fit_forest(*input, y, seed, params));
      break;
    }
    case ModelKind::gbdt:
      fitted.model = std::make_unique<GbdtModel>(fit_gbdt(*input, y, seed, GbdtParams{}));
      break;
    case ModelKind::adaboost:
      fitted.model = std::make_unique<AdaBoostModel>(fit_adaboost(*input, y, seed, AdaBoostParams{}));
      break;
    case ModelKind::knn:
      fitted.model = std::make_unique<KnnModel>(fit_knn(*input, y, KnnParams{}));
      break;
    case ModelKind::naive_bayes:
      fitted.model = std::make_unique<GaussianNbModel>(fit_gaussian_nb(*input, y));
      break;
    case ModelKind::mlp:
      fitted.model = std::make_unique<MlpModel>(fit_mlp(*input, y, seed, MlpParams{}));
      break;
  }
  return fitted;
}

ImportanceReport feature_importance(const FittedModel& fitted,
                                    const std::vector<std::string>& feature_names) {
  if (feature_names.size() != fitted.n_features) {
    throw ConfigError("feature name list does not match model dimension");
  }
  std::vector<double> weights;
  if (const auto* forest = dynamic_cast<const ForestModel*>(fitted.model.get())) {
    weights = forest->importance();
  } else if (const auto* gbdt = dynamic_cast<const GbdtModel*>(fitted.model.get())) {
    weights = gbdt->importance();
  } else if (const auto* lr = dynamic_cast<const LogisticModel*>(fitted.model.get())) {
    weights.reserve(lr->weights.size());
    for (const double w : lr->weights) weights.push_back(std::abs(w));
  } else {
    throw ConfigError("feature importance is not defined for model '" +
                      std::string(fitted.spec.name) + "'");
  }

  ImportanceReport report;
  report.model = std::string(fitted.spec.name);
  std::vector<std::size_t> order(weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return weights[a] > weights[b];  // stable: ties keep feature order
  });
  for (const std::size_t f : order) {
    report.ranked.push_back(ImportanceEntry{feature_names[f], weights[f]});
  }
  return report;
}

}  // namespace leap
