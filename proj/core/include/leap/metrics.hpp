#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace leap {

// All four quantities live in [0,1].
struct MetricSet {
  double roc_auc = 0.0;
  double pr_auc = 0.0;  // average precision
  double brier = 0.0;
  double f1_at_half = 0.0;

  bool operator==(const MetricSet&) const = default;
};

// Reporting order of the four metrics; indexes metric_value/metric_ref.
inline constexpr std::size_t kNumMetrics = 4;
extern const std::array<std::string_view, kNumMetrics> kMetricNames;
double metric_value(const MetricSet& metrics, std::size_t metric_index);
double& metric_ref(MetricSet& metrics, std::size_t metric_index);

// Mann-Whitney statistic: (concordant pairs + half credit for score ties)
// over all positive/negative pairs.  Both classes must be present.
double roc_auc(std::span<const std::uint8_t> y, std::span<const double> p);

// AP = sum over descending-score ranks of (recall step * precision there).
// Score ties are ordered by original index (stable sort); needs a positive.
double average_precision(std::span<const std::uint8_t> y, std::span<const double> p);

double brier(std::span<const std::uint8_t> y, std::span<const double> p);

struct F1Result {
  double value = 0.0;
  bool degenerate = false;  // no positives predicted or present: defined as 0
};

// Threshold 0.5, inclusive: p >= 0.5 predicts the positive class.
F1Result f1_at_half_detail(std::span<const std::uint8_t> y, std::span<const double> p);
double f1_at_half(std::span<const std::uint8_t> y, std::span<const double> p);

MetricSet compute_metrics(std::span<const std::uint8_t> y, std::span<const double> p);

}  // namespace leap
