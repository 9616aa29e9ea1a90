#include "leap/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "leap/error.hpp"
#include "leap/rng.hpp"

namespace leap {
namespace {

using Labels = std::vector<std::uint8_t>;
using Scores = std::vector<double>;

// Brute-force Mann-Whitney over all positive/negative pairs, written
// independently of the production rank-sum implementation.
double pairwise_auc(const Labels& y, const Scores& p) {
  double credit = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) continue;
      ++pairs;
      if (p[i] > p[j]) credit += 1.0;
      else if (p[i] == p[j]) credit += 0.5;
    }
  }
  return credit / static_cast<double>(pairs);
}

// Precision-at-each-positive-rank AP with ties broken by original index.
double rank_walk_ap(const Labels& y, const Scores& p) {
  std::vector<std::size_t> order(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  double ap = 0.0, hits = 0.0, total = 0.0;
  for (const std::size_t i : order) total += y[i];
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (y[order[rank]] == 1) {
      hits += 1.0;
      ap += (hits / static_cast<double>(rank + 1)) / total;
    }
  }
  return ap;
}

TEST(RocAuc, FrozenExamples) {
  EXPECT_DOUBLE_EQ(roc_auc(Labels{0, 1}, Scores{0.2, 0.8}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc(Labels{0, 1}, Scores{0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(roc_auc(Labels{0, 1, 0, 1}, Scores{0.1, 0.4, 0.35, 0.8}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc(Labels{1, 0}, Scores{0.3, 0.7}), 0.0);
}

TEST(AveragePrecision, FrozenExamples) {
  EXPECT_DOUBLE_EQ(average_precision(Labels{1}, Scores{0.9}), 1.0);
  EXPECT_DOUBLE_EQ(average_precision(Labels{1, 0, 1}, Scores{0.9, 0.8, 0.7}), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(average_precision(Labels{0, 0, 1, 1}, Scores{0.9, 0.8, 0.7, 0.6}), 5.0 / 12.0);
}

TEST(Brier, FrozenExamples) {
  EXPECT_DOUBLE_EQ(brier(Labels{1, 0}, Scores{0.5, 0.5}), 0.25);
  EXPECT_DOUBLE_EQ(brier(Labels{1}, Scores{0.0}), 1.0);
  EXPECT_DOUBLE_EQ(brier(Labels{0, 1}, Scores{0.0, 1.0}), 0.0);
}

TEST(F1AtHalf, FrozenExamples) {
  // tp=2 fp=1 fn=1 -> precision 2/3, recall 2/3, f1 2/3
  EXPECT_DOUBLE_EQ(f1_at_half(Labels{1, 1, 1, 0, 0}, Scores{0.9, 0.8, 0.2, 0.7, 0.1}), 2.0 / 3.0);
  // threshold is inclusive: p = 0.5 predicts positive
  EXPECT_DOUBLE_EQ(f1_at_half(Labels{1}, Scores{0.5}), 1.0);
}

TEST(F1AtHalf, DegenerateCasesAreZeroAndFlagged) {
  // nothing predicted positive and nothing is positive
  const F1Result r = f1_at_half_detail(Labels{0, 0}, Scores{0.1, 0.2});
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_TRUE(r.degenerate);
  // positives exist but none predicted: fn > 0, so defined as 0 yet not degenerate
  const F1Result miss = f1_at_half_detail(Labels{1, 1}, Scores{0.1, 0.2});
  EXPECT_DOUBLE_EQ(miss.value, 0.0);
  EXPECT_FALSE(miss.degenerate);
}

TEST(Metrics, CrossImplementationFixtures) {
  // Independently computed fixtures (tie-heavy quantized scores).
  struct Fixture {
    Labels y;
    Scores p;
    double auc, ap, br, f1;
  };
  const std::vector<Fixture> fixtures = {
      {{1, 0, 1, 1}, {0.0, 1.0, 0.0, 0.5}, 0.0, 0.6388888888888888, 0.8125, 0.4},
      {{1, 0, 0, 0, 1, 1, 0, 0, 0},
       {1.0, 0.75, 1.0, 0.5, 0.0, 0.75, 0.0, 0.0, 0.75},
       0.5833333333333334, 0.6428571428571429, 0.3819444444444444, 0.4444444444444444},
      {{0, 1, 1, 1, 1, 1},
       {0.75, 0.75, 0.25, 0.75, 0.25, 0.5},
       0.2, 0.71, 0.34375, 0.6666666666666666},
      {{1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1},
       {0.25, 0.25, 0.5, 0.0, 0.5, 0.5, 0.25, 0.25, 0.0, 0.75, 0.0, 0.25},
       0.5, 0.6830357142857143, 0.4270833333333333, 0.5},
      {{1, 0, 1, 1, 0, 1, 0},
       {0.25, 0.5, 0.5, 0.5, 0.0, 0.5, 0.0},
       0.7916666666666666, 0.6791666666666667, 0.22321428571428573, 0.75},
  };
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const Fixture& f = fixtures[k];
    EXPECT_NEAR(roc_auc(f.y, f.p), f.auc, 1e-12) << "fixture " << k;
    EXPECT_NEAR(average_precision(f.y, f.p), f.ap, 1e-12) << "fixture " << k;
    EXPECT_NEAR(brier(f.y, f.p), f.br, 1e-12) << "fixture " << k;
    EXPECT_NEAR(f1_at_half(f.y, f.p), f.f1, 1e-12) << "fixture " << k;
  }
}

TEST(Metrics, RandomizedAgreementWithBruteForce) {
  Rng rng(99);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 5 + rng.below(40);
    Labels y(n);
    Scores p(n);
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(rng.below(2));
      // quantize to force plenty of ties
      p[i] = static_cast<double>(rng.below(5)) / 4.0;
      (y[i] ? pos : neg) = true;
    }
    if (!pos || !neg) continue;
    EXPECT_NEAR(roc_auc(y, p), pairwise_auc(y, p), 1e-12);
    EXPECT_NEAR(average_precision(y, p), rank_walk_ap(y, p), 1e-12);
  }
}

TEST(RocAuc, InvariantUnderMonotoneScoreTransforms) {
  Rng rng(7);
  Labels y;
  Scores p;
  for (std::size_t i = 0; i < 60; ++i) {
    y.push_back(static_cast<std::uint8_t>(rng.below(2)));
    p.push_back(rng.uniform());
  }
  y[0] = 1;
  y[1] = 0;
  const double base = roc_auc(y, p);
  Scores warped = p;
  for (double& v : warped) v = std::tanh(3.0 * v - 1.0);  // strictly increasing
  EXPECT_NEAR(roc_auc(y, warped), base, 1e-12);
}

TEST(RocAuc, ComplementSymmetry) {
  Rng rng(11);
  Labels y;
  Scores p;
  for (std::size_t i = 0; i < 40; ++i) {
    y.push_back(static_cast<std::uint8_t>(rng.below(2)));
    p.push_back(static_cast<double>(rng.below(10)) / 9.0);
  }
  y[0] = 1;
  y[1] = 0;
  Labels flipped = y;
  for (auto& v : flipped) v = static_cast<std::uint8_t>(1 - v);
  Scores inverted = p;
  for (double& v : inverted) v = 1.0 - v;
  EXPECT_NEAR(roc_auc(flipped, inverted), roc_auc(y, p), 1e-12);
}

TEST(Metrics, AllFourStayInUnitInterval) {
  Rng rng(31);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 4 + rng.below(30);
    Labels y(n);
    Scores p(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(rng.below(2));
      p[i] = rng.uniform();
    }
    y[0] = 1;
    y[n - 1] = 0;
    const MetricSet m = compute_metrics(y, p);
    for (std::size_t k = 0; k < kNumMetrics; ++k) {
      const double v = metric_value(m, k);
      ASSERT_GE(v, 0.0) << kMetricNames[k];
      ASSERT_LE(v, 1.0) << kMetricNames[k];
    }
  }
}

TEST(Metrics, UndefinedCasesThrow) {
  EXPECT_THROW(roc_auc(Labels{1, 1}, Scores{0.1, 0.2}), MetricUndefinedError);
  EXPECT_THROW(roc_auc(Labels{0, 0}, Scores{0.1, 0.2}), MetricUndefinedError);
  EXPECT_THROW(roc_auc(Labels{}, Scores{}), MetricUndefinedError);
  EXPECT_THROW(average_precision(Labels{0, 0}, Scores{0.1, 0.2}), MetricUndefinedError);
  EXPECT_THROW(brier(Labels{}, Scores{}), MetricUndefinedError);
  EXPECT_THROW(compute_metrics(Labels{1, 1}, Scores{0.5, 0.6}), MetricUndefinedError);
}

TEST(Metrics, LengthMismatchIsAnError) {
  EXPECT_THROW(roc_auc(Labels{1, 0}, Scores{0.5}), DataError);
}

TEST(Metrics, NamesAndAccessorsLineUp) {
  MetricSet m;
  m.roc_auc = 0.1;
  m.pr_auc = 0.2;
  m.brier = 0.3;
  m.f1_at_half = 0.4;
  EXPECT_EQ(kMetricNames[0], "roc_auc");
  EXPECT_EQ(kMetricNames[1], "pr_auc");
  EXPECT_EQ(kMetricNames[2], "brier");
  EXPECT_EQ(kMetricNames[3], "f1_at_half");
  for (std::size_t k = 0; k < kNumMetrics; ++k) {
    EXPECT_DOUBLE_EQ(metric_value(m, k), 0.1 * static_cast<double>(k + 1));
    metric_ref(m, k) = 0.9;
  }
  EXPECT_DOUBLE_EQ(m.brier, 0.9);
}

}  // namespace
}  // namespace leap
