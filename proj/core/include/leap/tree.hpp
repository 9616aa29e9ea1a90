#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leap/matrix.hpp"
#include "leap/rng.hpp"

namespace leap {

// One CART node.  Internal nodes route row[feature] <= threshold to left.
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;  // leaf prediction (class fraction or regression value)

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

enum class SplitCriterion : std::uint8_t { gini, squared_error };
enum class ThresholdRule : std::uint8_t { best, random };
enum class LeafRule : std::uint8_t { mean, newton };

struct TreeConfig {
  SplitCriterion criterion = SplitCriterion::gini;
  ThresholdRule thresholds = ThresholdRule::best;
  LeafRule leaf = LeafRule::mean;
  int max_depth = 16;
  int min_leaf = 1;            // minimum rows per side, duplicates counted
  int features_per_split = 0;  // 0 = consider every feature
};

class DecisionTree {
 public:
  std::vector<TreeNode> nodes;

  double predict_row(const double* row) const {
    std::int32_t i = 0;
    while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
      const TreeNode& n = nodes[static_cast<std::size_t>(i)];
      i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].value;
  }

  // Total weighted impurity decrease accumulated per feature during growth.
  const std::vector<double>& importance() const { return importance_; }
  std::vector<double>& mutable_importance() { return importance_; }

 private:
  std::vector<double> importance_;
};

// Grows one tree on the row multiset `rows` (bootstrap duplicates welcome).
// targets: the value being fit (class labels as 0/1 or residuals).
// hessians: per-row curvature for newton leaves; may be empty otherwise.
// weights: per-row sample weights; empty means all ones.
// All stochastic choices (feature subsets, random thresholds) come from rng.
DecisionTree grow_tree(const Matrix& x, std::span<const double> targets,
                       std::span<const double> hessians, std::span<const double> weights,
                       std::span<const std::int32_t> rows, const TreeConfig& config, Rng& rng);

}  // namespace leap
