#include "leap/boosting.hpp"

#include <algorithm>
#include <cmath>

#include "leap/error.hpp"

namespace leap {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

double clamped_log(double p) { return std::log(std::max(p, 1e-300)); }

double mean_log_loss(const std::vector<double>& score, const std::vector<std::uint8_t>& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = sigmoid(score[i]);
    total += y[i] ? -clamped_log(p) : -clamped_log(1.0 - p);
  }
  return total / static_cast<double>(y.size());
}

}  // namespace

std::vector<double> GbdtModel::decision_function(const Matrix& x) const {
  std::vector<double> score(x.rows, init_log_odds);
  for (const auto& tree : stages) {
    for (std::size_t r = 0; r < x.rows; ++r) {
      score[r] += params.learning_rate * tree.predict_row(x.row(r));
    }
  }
  return score;
}

std::vector<double> GbdtModel::predict_proba(const Matrix& x) const {
  std::vector<double> p = decision_function(x);
  for (double& v : p) v = sigmoid(v);
  return p;
}

std::vector<double> GbdtModel::importance() const {
  std::vector<double> total(n_features, 0.0);
  for (const auto& tree : stages) {
    const auto& imp = tree.importance();
    for (std::size_t f = 0; f < n_features; ++f) total[f] += imp[f];
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  if (sum > 0.0) {
    for (double& v : total) v /= sum;
  }
  return total;
}

GbdtModel fit_gbdt(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                   const GbdtParams& params) {
  const std::size_t n = x.rows;
  GbdtModel model;
  model.params = params;
  model.n_features = x.cols;

  double positives = 0.0;
  for (std::uint8_t v : y) positives += v;
  const double base = positives / static_cast<double>(n);
  model.init_log_odds = std::log(base / (1.0 - base));

  TreeConfig config;
  config.criterion = SplitCriterion::squared_error;
  config.thresholds = ThresholdRule::best;
  config.leaf = LeafRule::newton;
  config.max_depth = params.max_depth;
  config.min_leaf = params.min_leaf;
  config.features_per_split = 0;  // boosting looks at every feature

  std::vector<double> score(n, model.init_log_odds);
  std::vector<double> residual(n), hessian(n);
  std::vector<std::int32_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::int32_t>(i);

  model.stages.reserve(static_cast<std::size_t>(params.n_stages));
  model.train_log_loss.reserve(static_cast<std::size_t>(params.n_stages));
  for (int m = 0; m < params.n_stages; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(score[i]);
      residual[i] = static_cast<double>(y[i]) - p;
      hessian[i] = p * (1.0 - p);
    }
    Rng rng(Rng::derive(seed, 0x6d0000 + static_cast<std::uint64_t>(m)));
    DecisionTree tree = grow_tree(x, residual, hessian, {}, rows, config, rng);
    for (std::size_t i = 0; i < n; ++i) {
      score[i] += params.learning_rate * tree.predict_row(x.row(i));
    }
    model.stages.push_back(std::move(tree));
    model.train_log_loss.push_back(mean_log_loss(score, y));
  }
  return model;
}

std::vector<double> AdaBoostModel::predict_proba(const Matrix& x) const {
  double total_alpha = 0.0;
  for (const auto& stage : stages) total_alpha += stage.alpha;
  std::vector<double> p(x.rows, 0.5);
  if (total_alpha <= 0.0) return p;

  for (std::size_t r = 0; r < x.rows; ++r) {
    double margin = 0.0;
    for (const auto& stage : stages) {
      const double vote = stage.stump.predict_row(x.row(r)) >= 0.5 ? 1.0 : -1.0;
      margin += stage.alpha * vote;
    }
    p[r] = sigmoid(margin / total_alpha);
  }
  return p;
}

AdaBoostModel fit_adaboost(const Matrix& x, const std::vector<std::uint8_t>& y,
                           std::uint64_t seed, const AdaBoostParams& params) {
  const std::size_t n = x.rows;
  AdaBoostModel model;
  model.params = params;
  model.n_features = x.cols;

  TreeConfig config;
  config.criterion = SplitCriterion::gini;
  config.thresholds = ThresholdRule::best;
  config.leaf = LeafRule::mean;
  config.max_depth = 1;
  config.min_leaf = 1;
  config.features_per_split = 0;

  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) targets[i] = static_cast<double>(y[i]);
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  std::vector<std::int32_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::int32_t>(i);

  model.stages.reserve(static_cast<std::size_t>(params.n_stages));
  for (int m = 0; m < params.n_stages; ++m) {
    Rng rng(Rng::derive(seed, 0xada0000 + static_cast<std::uint64_t>(m)));
    DecisionTree stump = grow_tree(x, targets, {}, weights, rows, config, rng);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool predicted_positive = stump.predict_row(x.row(i)) >= 0.5;
      if (predicted_positive != (y[i] != 0)) err += weights[i];
    }
    err = std::clamp(err, 1e-10, 1.0 - 1e-10);
    const double alpha = params.learning_rate * std::log((1.0 - err) / err);
    if (alpha <= 0.0) {
      // The stump is no better than chance under the current weights; keep
      // the stage count but give it no vote.
      model.stages.push_back(AdaBoostStage{std::move(stump), 0.0});
      continue;
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool predicted_positive = stump.predict_row(x.row(i)) >= 0.5;
      if (predicted_positive != (y[i] != 0)) weights[i] *= std::exp(alpha);
      total += weights[i];
    }
    for (double& w : weights) w /= total;
    model.stages.push_back(AdaBoostStage{std::move(stump), alpha});
  }
  return model;
}

}  // namespace leap
