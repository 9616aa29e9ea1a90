#pragma once

#include <cstdint>
#include <vector>

#include "leap/model.hpp"
#include "leap/tree.hpp"

namespace leap {

// Shared implementation of the two bagged ensembles.  Random forest draws a
// bootstrap sample per tree and searches exact thresholds; extra-trees uses
// the full sample with random thresholds.  Both: 300 trees, depth cap 16,
// minimum leaf 2, sqrt(d) features per split, Gini.
struct ForestParams {
  int n_trees = 300;
  int max_depth = 16;
  int min_leaf = 2;
  bool bootstrap = true;
  ThresholdRule thresholds = ThresholdRule::best;
};

class ForestModel : public Model {
 public:
  ForestModel() = default;
  ForestModel(ForestParams params, std::vector<DecisionTree> trees, std::size_t n_features)
      : params(params), trees(std::move(trees)), n_features(n_features) {}

  std::vector<double> predict_proba(const Matrix& x) const override;

  // Total impurity decrease per feature over all trees, normalized to sum 1
  // (all zeros if no split was ever made).
  std::vector<double> importance() const;

  ForestParams params;
  std::vector<DecisionTree> trees;
  std::size_t n_features = 0;
};

// Tree m draws its random stream from (seed, m), so results do not depend on
// fitting order.
ForestModel fit_forest(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                       const ForestParams& params);

}  // namespace leap
