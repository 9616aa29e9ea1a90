#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "leap/dataset.hpp"
#include "leap/matrix.hpp"
#include "leap/provenance.hpp"
#include "leap/temporal.hpp"

namespace leap {

inline constexpr std::size_t kNumFeatures = 10;

// Fixed order, identical across cutoffs and instances.
enum FeatureIndex : std::size_t {
  kTotalClicks = 0,
  kActiveDays = 1,
  kUniqueResources = 2,
  kUniqueActivityTypes = 3,
  kDailyClicksMean = 4,
  kDailyClicksStd = 5,
  kDailyClicksMax = 6,
  kNSubmissions = 7,
  kMeanSubmissionDelay = 8,
  kAvgScore = 9,
};

extern const std::array<std::string_view, kNumFeatures> kFeatureNames;
FeatureGroup feature_group(std::size_t feature_index);

using FeatureVector = std::array<double, kNumFeatures>;

struct InteractionFeatures {
  double total_clicks = 0.0;
  double active_days = 0.0;
  double unique_resources = 0.0;
  double unique_activity_types = 0.0;
  double daily_clicks_mean = 0.0;
  double daily_clicks_std = 0.0;  // population std of per-day click sums
  double daily_clicks_max = 0.0;
};

struct AssessmentFeatures {
  double n_submissions = 0.0;
  double mean_submission_delay = 0.0;  // mean over rows with a due date; negative = early
  double avg_score = 0.0;              // mean over rows with a present score
};

// Both feature ops consume an instance's slice of an enriched view and log
// every accessed record day in the ledger.  Empty slices yield all zeros.
InteractionFeatures interaction_features(std::span<const EnrichedInteraction> records,
                                         std::size_t instance_slot, ProvenanceLedger& ledger);
AssessmentFeatures assessment_features(std::span<const EnrichedSubmission> records,
                                       std::size_t instance_slot, ProvenanceLedger& ledger);

FeatureVector assemble(const InteractionFeatures& interaction, const AssessmentFeatures& assessment);

// Test seam: appends one fabricated record after truncation has run, which is
// exactly what a buggy pipeline that truncates too late would produce.  The
// audit is expected to catch the planted day.
struct LeakInjection {
  SourceKind kind = SourceKind::assessment_submission;
  std::size_t instance_slot = 0;
  std::int32_t day = 0;
};

struct CutoffDataset {
  std::int32_t cutoff = 0;
  LeakagePolicy policy;
  Matrix x;                         // one row per cohort instance, kNumFeatures columns
  std::vector<std::uint8_t> y;     // parallel labels
  AuditReport audit;
  std::size_t dropped_interaction_joins = 0;
  std::size_t dropped_submission_joins = 0;

  std::size_t size() const { return x.rows; }
};

// The full per-cutoff build: effective cutoffs per source, truncation before
// any join or aggregation, metadata enrichment through guarded joins, feature
// computation with provenance logging, then the audit.  A failed strict audit
// throws ProtocolViolation and no dataset is returned.
CutoffDataset build_cutoff_dataset(const Cohort& cohort, const RawTables& tables, std::int32_t t,
                                   LeakagePolicy policy,
                                   const std::vector<LeakInjection>& injections = {});

// CSV export: feature columns in fixed order, then label, then key columns.
// Row order follows the cohort's (module, presentation, student) sort.
void write_dataset_csv(const CutoffDataset& dataset, const Cohort& cohort,
                       const std::filesystem::path& path);

}  // namespace leap
