#include "leap/forest.hpp"

#include <cmath>

#include "leap/error.hpp"

namespace leap {

std::vector<double> ForestModel::predict_proba(const Matrix& x) const {
  std::vector<double> p(x.rows, 0.0);
  for (const auto& tree : trees) {
    for (std::size_t r = 0; r < x.rows; ++r) p[r] += tree.predict_row(x.row(r));
  }
  const double inv = 1.0 / static_cast<double>(trees.size());
  for (double& v : p) v *= inv;
  return p;
}

std::vector<double> ForestModel::importance() const {
  std::vector<double> total(n_features, 0.0);
  for (const auto& tree : trees) {
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

ForestModel fit_forest(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                       const ForestParams& params) {
  const auto n = static_cast<std::int32_t>(x.rows);
  std::vector<double> targets(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) targets[i] = static_cast<double>(y[i]);

  TreeConfig config;
  config.criterion = SplitCriterion::gini;
  config.thresholds = params.thresholds;
  config.leaf = LeafRule::mean;
  config.max_depth = params.max_depth;
  config.min_leaf = params.min_leaf;
  config.features_per_split =
      static_cast<int>(std::floor(std::sqrt(static_cast<double>(x.cols))));

  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(params.n_trees));
  std::vector<std::int32_t> rows(x.rows);
  for (int m = 0; m < params.n_trees; ++m) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(m)));
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n)));
    } else {
      for (std::int32_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
    }
    trees.push_back(grow_tree(x, targets, {}, {}, rows, config, rng));
  }
  return ForestModel(params, std::move(trees), x.cols);
}

}  // namespace leap
