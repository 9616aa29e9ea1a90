#include "leap/features.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "leap/dataset.hpp"
#include "leap/error.hpp"
#include "test_support.hpp"

namespace leap {
namespace {

TEST(FeatureNames, FixedOrderAndGrouping) {
  ASSERT_EQ(kFeatureNames.size(), kNumFeatures);
  EXPECT_EQ(kFeatureNames[0], "total_clicks_t");
  EXPECT_EQ(kFeatureNames[6], "daily_clicks_max_t");
  EXPECT_EQ(kFeatureNames[7], "n_submissions_t");
  EXPECT_EQ(kFeatureNames[9], "avg_score_t");
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    EXPECT_EQ(feature_group(i), i < 7 ? FeatureGroup::interaction : FeatureGroup::assessment);
  }
}

TEST(InteractionFeatures, TwoRecordOracle) {
  // (day 3, site A, 2 clicks), (day 8, site B, 3 clicks), distinct types:
  // totals 5, two active days, day sums {2,3} -> mean 2.5, population std 0.5
  const std::vector<EnrichedInteraction> records = {
      {3, 100, 2, 0},
      {8, 101, 3, 1},
  };
  ProvenanceLedger ledger(1, 10);
  const InteractionFeatures f = interaction_features(records, 0, ledger);
  EXPECT_DOUBLE_EQ(f.total_clicks, 5.0);
  EXPECT_DOUBLE_EQ(f.active_days, 2.0);
  EXPECT_DOUBLE_EQ(f.unique_resources, 2.0);
  EXPECT_DOUBLE_EQ(f.unique_activity_types, 2.0);
  EXPECT_DOUBLE_EQ(f.daily_clicks_mean, 2.5);
  EXPECT_DOUBLE_EQ(f.daily_clicks_std, 0.5);
  EXPECT_DOUBLE_EQ(f.daily_clicks_max, 3.0);
  EXPECT_EQ(ledger.entry(0, FeatureGroup::interaction), 8);
}

TEST(InteractionFeatures, SameDayRecordsMergeIntoOneDaySum) {
  const std::vector<EnrichedInteraction> records = {
      {4, 100, 2, 0},
      {4, 101, 3, 1},  // same day, different site
  };
  ProvenanceLedger ledger(1, 10);
  const InteractionFeatures f = interaction_features(records, 0, ledger);
  EXPECT_DOUBLE_EQ(f.total_clicks, 5.0);
  EXPECT_DOUBLE_EQ(f.active_days, 1.0);
  EXPECT_DOUBLE_EQ(f.unique_resources, 2.0);
  EXPECT_DOUBLE_EQ(f.daily_clicks_mean, 5.0);
  EXPECT_DOUBLE_EQ(f.daily_clicks_std, 0.0);
  EXPECT_DOUBLE_EQ(f.daily_clicks_max, 5.0);
}

TEST(InteractionFeatures, RepeatedSiteCountsOnce) {
  const std::vector<EnrichedInteraction> records = {
      {1, 100, 1, 0},
      {2, 100, 1, 0},
      {3, 100, 1, 0},
  };
  ProvenanceLedger ledger(1, 10);
  const InteractionFeatures f = interaction_features(records, 0, ledger);
  EXPECT_DOUBLE_EQ(f.unique_resources, 1.0);
  EXPECT_DOUBLE_EQ(f.unique_activity_types, 1.0);
  EXPECT_DOUBLE_EQ(f.active_days, 3.0);
}

TEST(InteractionFeatures, EmptySliceIsAllZerosWithNoLedgerEntry) {
  ProvenanceLedger ledger(1, 10);
  const InteractionFeatures f = interaction_features({}, 0, ledger);
  EXPECT_DOUBLE_EQ(f.total_clicks, 0.0);
  EXPECT_DOUBLE_EQ(f.daily_clicks_std, 0.0);
  EXPECT_FALSE(ledger.has_entry(0, FeatureGroup::interaction));
}

TEST(AssessmentFeatures, TwoSubmissionOracle) {
  // (submitted 18, due 19, score 80) and (submitted 33, due 33, score 60):
  // delays {-1, 0} -> mean -0.5; scores {80, 60} -> mean 70
  const std::vector<EnrichedSubmission> records = {
      {18, 900, 80.0f, true, true, 19},
      {33, 901, 60.0f, true, true, 33},
  };
  ProvenanceLedger ledger(1, 35);
  const AssessmentFeatures f = assessment_features(records, 0, ledger);
  EXPECT_DOUBLE_EQ(f.n_submissions, 2.0);
  EXPECT_DOUBLE_EQ(f.mean_submission_delay, -0.5);
  EXPECT_DOUBLE_EQ(f.avg_score, 70.0);
  EXPECT_EQ(ledger.entry(0, FeatureGroup::assessment), 33);
}

TEST(AssessmentFeatures, MissingPiecesFallBackToZero) {
  // no due date -> no delay contribution; no score -> no average contribution
  const std::vector<EnrichedSubmission> no_due = {{10, 900, 55.0f, true, false, 0}};
  ProvenanceLedger ledger(3, 35);
  AssessmentFeatures f = assessment_features(no_due, 0, ledger);
  EXPECT_DOUBLE_EQ(f.n_submissions, 1.0);
  EXPECT_DOUBLE_EQ(f.mean_submission_delay, 0.0);
  EXPECT_DOUBLE_EQ(f.avg_score, 55.0);

  const std::vector<EnrichedSubmission> no_score = {{10, 900, 0.0f, false, true, 12}};
  f = assessment_features(no_score, 1, ledger);
  EXPECT_DOUBLE_EQ(f.mean_submission_delay, -2.0);
  EXPECT_DOUBLE_EQ(f.avg_score, 0.0);

  f = assessment_features({}, 2, ledger);
  EXPECT_DOUBLE_EQ(f.n_submissions, 0.0);
  EXPECT_FALSE(ledger.has_entry(2, FeatureGroup::assessment));
}

TEST(Assemble, PlacesEveryFieldInOrder) {
  InteractionFeatures i;
  i.total_clicks = 1;
  i.active_days = 2;
  i.unique_resources = 3;
  i.unique_activity_types = 4;
  i.daily_clicks_mean = 5;
  i.daily_clicks_std = 6;
  i.daily_clicks_max = 7;
  AssessmentFeatures a;
  a.n_submissions = 8;
  a.mean_submission_delay = 9;
  a.avg_score = 10;
  const FeatureVector x = assemble(i, a);
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    EXPECT_DOUBLE_EQ(x[k], static_cast<double>(k + 1));
  }
}

// ---------------------------------------------------------------------------
// Full dataset builds.

TEST(CutoffDataset, StrictBuildPassesAuditAndShapesMatch) {
  const RawTables tables = test::small_tables(80, 13);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset dataset = build_cutoff_dataset(cohort, tables, 21, LeakagePolicy{});
  EXPECT_EQ(dataset.cutoff, 21);
  EXPECT_EQ(dataset.x.rows, cohort.size());
  EXPECT_EQ(dataset.x.cols, kNumFeatures);
  EXPECT_EQ(dataset.y, cohort.labels);
  EXPECT_EQ(dataset.audit.verdict, AuditVerdict::pass);
  EXPECT_EQ(dataset.dropped_interaction_joins, 0u);
  for (const double v : dataset.x.data) ASSERT_TRUE(std::isfinite(v));
}

TEST(CutoffDataset, StrictFeaturesEqualPhysicalDeletion) {
  // Bitwise identity between guarding post-cutoff records out and a world
  // where those records never existed.
  for (const std::uint64_t seed : {101u, 202u}) {
    const RawTables tables = test::small_tables(60, seed);
    for (const std::int32_t t : {7, 28}) {
      RawTables erased = tables;
      std::erase_if(erased.student_vle, [&](const StudentVleRow& r) { return r.day > t; });
      std::erase_if(erased.student_assessment, [&](const StudentAssessmentRow& r) {
        return r.has_day && r.day_submitted > t;
      });

      const CutoffDataset guarded =
          build_cutoff_dataset(build_cohort(tables), tables, t, LeakagePolicy{});
      const CutoffDataset deleted =
          build_cutoff_dataset(build_cohort(erased), erased, t, LeakagePolicy{});
      ASSERT_EQ(guarded.x, deleted.x);
      ASSERT_EQ(guarded.y, deleted.y);
    }
  }
}

TEST(CutoffDataset, CountFeaturesGrowWithTheCutoff) {
  const RawTables tables = test::small_tables(60, 17);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset early = build_cutoff_dataset(cohort, tables, 14, LeakagePolicy{});
  const CutoffDataset late = build_cutoff_dataset(cohort, tables, 42, LeakagePolicy{});
  const std::size_t monotone[] = {kTotalClicks, kActiveDays, kUniqueResources,
                                  kUniqueActivityTypes, kDailyClicksMax, kNSubmissions};
  for (std::size_t row = 0; row < cohort.size(); ++row) {
    for (const std::size_t f : monotone) {
      ASSERT_LE(early.x.at(row, f), late.x.at(row, f)) << "row " << row << " feature " << f;
    }
  }
}

TEST(CutoffDataset, LeakyAllSeesMoreAndReportsDiagnostics) {
  const RawTables tables = test::small_tables(60, 19);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset strict = build_cutoff_dataset(cohort, tables, 7, LeakagePolicy{});
  const CutoffDataset leaky =
      build_cutoff_dataset(cohort, tables, 7, LeakagePolicy{PolicyMode::leaky_all});
  EXPECT_EQ(leaky.audit.verdict, AuditVerdict::pass_with_diagnostics);
  EXPECT_FALSE(leaky.audit.violations.empty());
  double strict_total = 0.0, leaky_total = 0.0;
  for (std::size_t row = 0; row < cohort.size(); ++row) {
    strict_total += strict.x.at(row, kTotalClicks);
    leaky_total += leaky.x.at(row, kTotalClicks);
  }
  EXPECT_GT(leaky_total, strict_total);
}

TEST(CutoffDataset, LeakyAssessmentOnlyUnlocksSubmissions) {
  const RawTables tables = test::small_tables(60, 23);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset strict = build_cutoff_dataset(cohort, tables, 7, LeakagePolicy{});
  const CutoffDataset leaky =
      build_cutoff_dataset(cohort, tables, 7, LeakagePolicy{PolicyMode::leaky_assessment});
  for (std::size_t row = 0; row < cohort.size(); ++row) {
    // interaction-side features stay truncated
    for (std::size_t f = 0; f < 7; ++f) {
      ASSERT_EQ(strict.x.at(row, f), leaky.x.at(row, f));
    }
  }
  double strict_subs = 0.0, leaky_subs = 0.0;
  for (std::size_t row = 0; row < cohort.size(); ++row) {
    strict_subs += strict.x.at(row, kNSubmissions);
    leaky_subs += leaky.x.at(row, kNSubmissions);
  }
  EXPECT_GT(leaky_subs, strict_subs);
}

TEST(LeakInjectionSeam, EachSourceKindIsCaught) {
  const RawTables tables = test::small_tables(40, 29);
  const Cohort cohort = build_cohort(tables);
  for (const SourceKind kind : {SourceKind::interaction, SourceKind::assessment_submission}) {
    const LeakInjection injection{kind, 5, 30};  // day 30 > cutoff 14
    try {
      build_cutoff_dataset(cohort, tables, 14, LeakagePolicy{}, {injection});
      FAIL() << "expected ProtocolViolation for kind " << static_cast<int>(kind);
    } catch (const ProtocolViolation& e) {
      ASSERT_FALSE(e.violations().empty());
      EXPECT_EQ(e.violations()[0].student, cohort.keys[5].student);
      EXPECT_EQ(e.violations()[0].max_day, 30);
    }
  }
}

TEST(LeakInjectionSeam, InjectionWithinTheCutoffIsInvisibleToTheAudit) {
  const RawTables tables = test::small_tables(40, 29);
  const Cohort cohort = build_cohort(tables);
  const LeakInjection injection{SourceKind::interaction, 2, 10};  // day 10 <= cutoff 14
  const CutoffDataset dataset = build_cutoff_dataset(cohort, tables, 14, LeakagePolicy{}, {injection});
  EXPECT_EQ(dataset.audit.verdict, AuditVerdict::pass);
}

TEST(LeakInjectionSeam, BadSlotIsAConfigError) {
  const RawTables tables = test::small_tables(10, 29);
  const Cohort cohort = build_cohort(tables);
  const LeakInjection injection{SourceKind::interaction, 10, 30};  // one past the end
  EXPECT_THROW(build_cutoff_dataset(cohort, tables, 14, LeakagePolicy{}, {injection}),
               ConfigError);
}

TEST(DatasetCsv, WritesOneRowPerInstance) {
  const RawTables tables = test::small_tables(25, 37);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset dataset = build_cutoff_dataset(cohort, tables, 14, LeakagePolicy{});
  test::TempDir dir;
  const auto path = dir.path() / "d.csv";
  write_dataset_csv(dataset, cohort, path);
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_NE(line.find("total_clicks_t"), std::string::npos);
  EXPECT_NE(line.find("label"), std::string::npos);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, cohort.size());
}

}  // namespace
}  // namespace leap
