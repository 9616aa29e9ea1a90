#include "leap/metrics.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#include "leap/error.hpp"

namespace leap {

namespace {

// Mismatched lengths are malformed input, not an undefined statistic.
void check_lengths(std::span<const std::uint8_t> y, std::span<const double> p,
                   const char* metric) {
  if (y.size() != p.size()) {
    throw DataError(std::string(metric) + ": label/score length mismatch");
  }
}

}  // namespace

double roc_auc(std::span<const std::uint8_t> y, std::span<const double> p) {
  check_lengths(y, p, "roc_auc");
  if (y.empty()) throw MetricUndefinedError("roc_auc: empty input");
  std::size_t n_pos = 0;
  for (std::uint8_t v : y) n_pos += v;
  const std::size_t n_neg = y.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw MetricUndefinedError("roc_auc undefined: only one class present");
  }

  // Rank-sum formulation; ties get the average rank, which yields exactly the
  // half-credit pair count.
  std::vector<std::size_t> order(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && p[order[j]] == p[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (y[order[k]]) rank_sum_pos += avg_rank;
    }
    i = j;
  }
  const double n_pos_d = static_cast<double>(n_pos);
  const double u = rank_sum_pos - n_pos_d * (n_pos_d + 1.0) / 2.0;
  return u / (n_pos_d * static_cast<double>(n_neg));
}

double average_precision(std::span<const std::uint8_t> y, std::span<const double> p) {
  check_lengths(y, p, "average_precision");
  if (y.empty()) throw MetricUndefinedError("average_precision: empty input");
  std::size_t n_pos = 0;
  for (std::uint8_t v : y) n_pos += v;
  if (n_pos == 0) {
    throw MetricUndefinedError("average_precision undefined: no positive instances");
  }

  std::vector<std::size_t> order(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (y[order[rank]]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return sum / static_cast<double>(n_pos);
}

double brier(std::span<const std::uint8_t> y, std::span<const double> p) {
  check_lengths(y, p, "brier");
  if (y.empty()) throw MetricUndefinedError("brier: empty input");
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = static_cast<double>(y[i]) - p[i];
    total += d * d;
  }
  return total / static_cast<double>(y.size());
}

F1Result f1_at_half_detail(std::span<const std::uint8_t> y, std::span<const double> p) {
  check_lengths(y, p, "f1_at_half");
  if (y.empty()) throw MetricUndefinedError("f1: empty input");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool predicted = p[i] >= 0.5;
    if (predicted && y[i]) ++tp;
    if (predicted && !y[i]) ++fp;
    if (!predicted && y[i]) ++fn;
  }
  if (tp == 0) {
    return F1Result{0.0, fp == 0 && fn == 0};
  }
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return F1Result{2.0 * precision * recall / (precision + recall), false};
}

double f1_at_half(std::span<const std::uint8_t> y, std::span<const double> p) {
  return f1_at_half_detail(y, p).value;
}

MetricSet compute_metrics(std::span<const std::uint8_t> y, std::span<const double> p) {
  MetricSet m;
  m.roc_auc = roc_auc(y, p);
  m.pr_auc = average_precision(y, p);
  m.brier = brier(y, p);
  m.f1_at_half = f1_at_half(y, p);
  return m;
}

const std::array<std::string_view, kNumMetrics> kMetricNames = {
    "roc_auc",
    "pr_auc",
    "brier",
    "f1_at_half",
};

double& metric_ref(MetricSet& metrics, std::size_t metric_index) {
  switch (metric_index) {
    case 0: return metrics.roc_auc;
    case 1: return metrics.pr_auc;
    case 2: return metrics.brier;
    default: return metrics.f1_at_half;
  }
}

double metric_value(const MetricSet& metrics, std::size_t metric_index) {
  return metric_ref(const_cast<MetricSet&>(metrics), metric_index);
}

}  // namespace leap
