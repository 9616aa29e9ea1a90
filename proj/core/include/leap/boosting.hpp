#pragma once

#include <cstdint>
#include <vector>

#include "leap/model.hpp"
#include "leap/tree.hpp"

namespace leap {

// Gradient-boosted trees for logistic loss: squared-error splits on the
// residuals, Friedman (Newton) leaf values, initialized at the log-odds of
// the training base rate.  250 stages, learning rate 0.05, depth 3.
struct GbdtParams {
  int n_stages = 250;
  double learning_rate = 0.05;
  int max_depth = 3;
  int min_leaf = 1;
};

class GbdtModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;
  std::vector<double> decision_function(const Matrix& x) const;  // raw log-odds
  std::vector<double> importance() const;

  GbdtParams params;
  double init_log_odds = 0.0;
  std::vector<DecisionTree> stages;
  std::size_t n_features = 0;

  // Mean training log-loss after each stage; diagnostic only, not serialized.
  std::vector<double> train_log_loss;
};

GbdtModel fit_gbdt(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                   const GbdtParams& params);

// Discrete-vote boosting over depth-1 stumps (200 stages, learning rate 0.5).
// The probability is the logistic of the vote margin normalized by the total
// stage weight, which keeps it inside (0,1) at any stage count.
struct AdaBoostParams {
  int n_stages = 200;
  double learning_rate = 0.5;
};

struct AdaBoostStage {
  DecisionTree stump;
  double alpha = 0.0;
};

class AdaBoostModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;

  AdaBoostParams params;
  std::vector<AdaBoostStage> stages;
  std::size_t n_features = 0;
};

AdaBoostModel fit_adaboost(const Matrix& x, const std::vector<std::uint8_t>& y,
                           std::uint64_t seed, const AdaBoostParams& params);

double sigmoid(double z);

}  // namespace leap
