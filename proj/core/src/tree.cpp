#include "leap/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "leap/error.hpp"

namespace leap {
namespace {

constexpr double kMinGain = 1e-12;

struct SplitChoice {
  bool valid = false;
  std::int32_t feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class Grower {
 public:
  Grower(const Matrix& x, std::span<const double> targets, std::span<const double> hessians,
         std::span<const double> weights, std::span<const std::int32_t> rows,
         const TreeConfig& config, Rng& rng)
      : x_(x), targets_(targets), hessians_(hessians), weights_(weights), config_(config),
        rng_(rng), rows_(rows.begin(), rows.end()) {
    tree_.mutable_importance().assign(x.cols, 0.0);
    feature_order_.resize(x.cols);
    for (std::size_t f = 0; f < x.cols; ++f) feature_order_[f] = static_cast<std::int32_t>(f);
  }

  DecisionTree run() {
    if (rows_.empty()) throw DataError("cannot grow a tree on zero rows");
    build(0, rows_.size(), 0);
    return std::move(tree_);
  }

 private:
  double weight_of(std::int32_t r) const {
    return weights_.empty() ? 1.0 : weights_[static_cast<std::size_t>(r)];
  }

  // Weighted impurity of a group given total weight w, weighted target sum s,
  // and weighted target square sum ss.
  double group_impurity(double w, double s, double ss) const {
    if (w <= 0.0) return 0.0;
    if (config_.criterion == SplitCriterion::gini) {
      return 2.0 * s * (w - s) / w;  // w * gini for 0/1 targets
    }
    return ss - s * s / w;  // w * variance
  }

  std::int32_t make_leaf(std::size_t begin, std::size_t end, double w, double s) {
    double value;
    if (config_.leaf == LeafRule::newton) {
      // Friedman-style leaf for logistic loss: sum of residuals over sum of
      // per-row curvature.
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto r = static_cast<std::size_t>(rows_[i]);
        num += targets_[r];
        den += hessians_[r];
      }
      value = num / std::max(den, 1e-12);
    } else {
      value = w > 0.0 ? s / w : 0.0;
    }
    tree_.nodes.push_back(TreeNode{-1, 0.0, -1, -1, value});
    return static_cast<std::int32_t>(tree_.nodes.size() - 1);
  }

  void node_stats(std::size_t begin, std::size_t end, double& w, double& s, double& ss,
                  std::size_t& n) const {
    w = s = ss = 0.0;
    n = end - begin;
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = static_cast<std::size_t>(rows_[i]);
      const double wt = weights_.empty() ? 1.0 : weights_[r];
      const double t = targets_[r];
      w += wt;
      s += wt * t;
      ss += wt * t * t;
    }
  }

  SplitChoice best_split_exact(std::size_t begin, std::size_t end, std::int32_t feature,
                               double parent_impurity, double w, double s, double ss) {
    const std::size_t n = end - begin;
    sorted_.clear();
    sorted_.reserve(n);
    for (std::size_t i = begin; i < end; ++i) {
      const std::int32_t r = rows_[i];
      sorted_.emplace_back(x_.at(static_cast<std::size_t>(r), static_cast<std::size_t>(feature)),
                           r);
    }
    std::sort(sorted_.begin(), sorted_.end());

    SplitChoice choice;
    choice.feature = feature;
    double wl = 0.0, sl = 0.0, ssl = 0.0;
    const auto min_leaf = static_cast<std::size_t>(config_.min_leaf);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto r = static_cast<std::size_t>(sorted_[i].second);
      const double wt = weights_.empty() ? 1.0 : weights_[r];
      const double t = targets_[r];
      wl += wt;
      sl += wt * t;
      ssl += wt * t * t;
      if (sorted_[i + 1].first <= sorted_[i].first) continue;  // tie, no boundary here
      const std::size_t nl = i + 1;
      if (nl < min_leaf || n - nl < min_leaf) continue;
      const double gain = parent_impurity - group_impurity(wl, sl, ssl) -
                          group_impurity(w - wl, s - sl, ss - ssl);
      // Strictly-better acceptance keeps the first boundary on exact ties.
      if (gain > choice.gain + kMinGain) {
        double threshold = sorted_[i].first + (sorted_[i + 1].first - sorted_[i].first) / 2.0;
        if (threshold >= sorted_[i + 1].first) threshold = sorted_[i].first;
        choice.valid = true;
        choice.gain = gain;
        choice.threshold = threshold;
      }
    }
    return choice;
  }

  SplitChoice best_split_random(std::size_t begin, std::size_t end, std::int32_t feature,
                                double parent_impurity, double w, double s, double ss) {
    SplitChoice choice;
    choice.feature = feature;
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = begin; i < end; ++i) {
      const double v =
          x_.at(static_cast<std::size_t>(rows_[i]), static_cast<std::size_t>(feature));
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    if (!(vmax > vmin)) return choice;  // constant feature on this node
    const double threshold = vmin + rng_.uniform() * (vmax - vmin);
    if (threshold >= vmax) return choice;

    double wl = 0.0, sl = 0.0, ssl = 0.0;
    std::size_t nl = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = static_cast<std::size_t>(rows_[i]);
      if (x_.at(r, static_cast<std::size_t>(feature)) <= threshold) {
        const double wt = weights_.empty() ? 1.0 : weights_[r];
        const double t = targets_[r];
        wl += wt;
        sl += wt * t;
        ssl += wt * t * t;
        ++nl;
      }
    }
    const std::size_t n = end - begin;
    const auto min_leaf = static_cast<std::size_t>(config_.min_leaf);
    if (nl < min_leaf || n - nl < min_leaf) return choice;
    const double gain = parent_impurity - group_impurity(wl, sl, ssl) -
                        group_impurity(w - wl, s - sl, ss - ssl);
    if (gain > kMinGain) {
      choice.valid = true;
      choice.gain = gain;
      choice.threshold = threshold;
    }
    return choice;
  }

  std::int32_t build(std::size_t begin, std::size_t end, int depth) {
    double w, s, ss;
    std::size_t n;
    node_stats(begin, end, w, s, ss, n);
    const double parent_impurity = group_impurity(w, s, ss);

    const bool can_split = depth < config_.max_depth &&
                           n >= 2 * static_cast<std::size_t>(config_.min_leaf) &&
                           parent_impurity > kMinGain;
    if (!can_split) return make_leaf(begin, end, w, s);

    // Per-node feature subset, drawn without replacement.
    std::size_t k = config_.features_per_split > 0
                        ? std::min<std::size_t>(static_cast<std::size_t>(config_.features_per_split),
                                                x_.cols)
                        : x_.cols;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(x_.cols - i)));
      std::swap(feature_order_[i], feature_order_[j]);
    }

    SplitChoice best;
    for (std::size_t i = 0; i < k; ++i) {
      const std::int32_t f = feature_order_[i];
      SplitChoice candidate =
          config_.thresholds == ThresholdRule::best
              ? best_split_exact(begin, end, f, parent_impurity, w, s, ss)
              : best_split_random(begin, end, f, parent_impurity, w, s, ss);
      if (candidate.valid && (!best.valid || candidate.gain > best.gain)) {
        best = candidate;
      }
    }
    if (!best.valid) return make_leaf(begin, end, w, s);

    const auto mid = std::stable_partition(
        rows_.begin() + static_cast<std::ptrdiff_t>(begin),
        rows_.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::int32_t r) {
          return x_.at(static_cast<std::size_t>(r), static_cast<std::size_t>(best.feature)) <=
                 best.threshold;
        });
    const auto split_at = static_cast<std::size_t>(mid - rows_.begin());

    tree_.mutable_importance()[static_cast<std::size_t>(best.feature)] += best.gain;
    tree_.nodes.push_back(TreeNode{best.feature, best.threshold, -1, -1, 0.0});
    const auto node_index = static_cast<std::int32_t>(tree_.nodes.size() - 1);
    const std::int32_t left = build(begin, split_at, depth + 1);
    const std::int32_t right = build(split_at, end, depth + 1);
    tree_.nodes[static_cast<std::size_t>(node_index)].left = left;
    tree_.nodes[static_cast<std::size_t>(node_index)].right = right;
    return node_index;
  }

  const Matrix& x_;
  std::span<const double> targets_;
  std::span<const double> hessians_;
  std::span<const double> weights_;
  const TreeConfig& config_;
  Rng& rng_;
  std::vector<std::int32_t> rows_;
  std::vector<std::int32_t> feature_order_;
  std::vector<std::pair<double, std::int32_t>> sorted_;
  DecisionTree tree_;
};

}  // namespace

DecisionTree grow_tree(const Matrix& x, std::span<const double> targets,
                       std::span<const double> hessians, std::span<const double> weights,
                       std::span<const std::int32_t> rows, const TreeConfig& config, Rng& rng) {
  if (config.leaf == LeafRule::newton && hessians.size() != targets.size()) {
    throw DataError("newton leaves require per-row hessians");
  }
  Grower grower(x, targets, hessians, weights, rows, config, rng);
  return grower.run();
}

}  // namespace leap
