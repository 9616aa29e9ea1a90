#pragma once

#include <cstdint>
#include <vector>

#include "leap/dataset.hpp"
#include "leap/features.hpp"
#include "leap/metrics.hpp"
#include "leap/model.hpp"
#include "leap/temporal.hpp"

namespace leap {

// One benchmark cell: a model trained and scored at one cutoff with one seed.
struct RunResult {
  PolicyMode policy = PolicyMode::strict;
  std::int32_t cutoff = 0;
  ModelKind model = ModelKind::logistic_regression;
  std::uint64_t seed = 0;
  MetricSet metrics;
  double wall_seconds = 0.0;  // fit + score + metric time for this cell

  bool operator==(const RunResult&) const = default;
};

// Mean and sample standard deviation over the seed set of one cell group.
struct AggregateResult {
  PolicyMode policy = PolicyMode::strict;
  std::int32_t cutoff = 0;
  ModelKind model = ModelKind::logistic_regression;
  std::size_t n_seeds = 0;
  MetricSet mean;
  MetricSet std_dev;  // sample (n-1) std; 0 when a single seed was run

  bool operator==(const AggregateResult&) const = default;
};

struct BenchmarkOutput {
  std::vector<RunResult> results;   // fixed order: (cutoff, model, seed)
  std::vector<AuditReport> audits;  // one per cutoff dataset build
};

// The full grid under one policy.  Each cutoff dataset is built once and
// shared read-only; each seed's stratified split is shared across models so
// every model sees the same instance partition.  `jobs` bounds worker
// threads over (cutoff, model, seed) cells; the result order does not depend
// on scheduling.  A failed strict audit aborts the whole run; an undefined
// metric aborts with the offending cell named.
BenchmarkOutput run_benchmark(const Cohort& cohort, const RawTables& tables,
                              const std::vector<std::int32_t>& cutoffs,
                              const std::vector<ModelSpec>& specs,
                              const std::vector<std::uint64_t>& seeds, LeakagePolicy policy,
                              unsigned jobs = 1,
                              const std::vector<LeakInjection>& injections = {});

// Groups results by (policy, cutoff, model) and reduces over seeds.  The
// expected seed set is the union observed anywhere in `results`; any group
// missing a seed is an error naming the gap.  Output ordered by
// (policy, cutoff, model).
std::vector<AggregateResult> aggregate(const std::vector<RunResult>& results);

// Mean ROC-AUC of one (cutoff, model) cell under all three policies.
struct AblationCell {
  std::int32_t cutoff = 0;
  ModelKind model = ModelKind::random_forest;
  double strict_roc_auc = 0.0;
  double leaky_assessment_roc_auc = 0.0;
  double leaky_all_roc_auc = 0.0;

  double delta_assessment() const { return leaky_assessment_roc_auc - strict_roc_auc; }
  double delta_all() const { return leaky_all_roc_auc - strict_roc_auc; }
};

struct AblationOutput {
  std::vector<RunResult> results;  // strict, then leaky-assessment, then leaky-all
  std::vector<AggregateResult> aggregates;
  std::vector<AblationCell> cells;  // ordered (cutoff, model)
  std::vector<AuditReport> audits;
};

// Runs the same grid under strict, leaky-assessment, and leaky-all.  Splits
// depend only on labels and seed, so the train/test partition is identical
// across policies and any metric gap is attributable to leakage alone.
AblationOutput ablation(const Cohort& cohort, const RawTables& tables,
                        const std::vector<std::int32_t>& cutoffs,
                        const std::vector<ModelSpec>& specs,
                        const std::vector<std::uint64_t>& seeds, unsigned jobs = 1);

// Strict-only diagnostic: fits each model on the training split of `seed` at
// each cutoff and ranks feature importances.  Every spec must support
// importance.  Output ordered (cutoff, model).
std::vector<ImportanceReport> importance_profile(const Cohort& cohort, const RawTables& tables,
                                                 const std::vector<std::int32_t>& cutoffs,
                                                 const std::vector<ModelSpec>& specs,
                                                 std::uint64_t seed);

}  // namespace leap
