#include "leap/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "leap/csv.hpp"
#include "leap/error.hpp"

namespace leap {

const std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "total_clicks_t",       "active_days_t",    "unique_resources_t",
    "unique_activity_types_t", "daily_clicks_mean_t", "daily_clicks_std_t",
    "daily_clicks_max_t",   "n_submissions_t",  "mean_submission_delay_t",
    "avg_score_t",
};

FeatureGroup feature_group(std::size_t feature_index) {
  return feature_index < kNSubmissions ? FeatureGroup::interaction : FeatureGroup::assessment;
}

InteractionFeatures interaction_features(std::span<const EnrichedInteraction> records,
                                         std::size_t instance_slot, ProvenanceLedger& ledger) {
  InteractionFeatures f;
  if (records.empty()) return f;

  // Records arrive in day order (view construction preserves the cohort's
  // per-instance day sort), so per-day click sums come from one pass.
  std::vector<double> day_sums;
  std::vector<std::int32_t> sites;
  std::vector<std::int16_t> types;
  sites.reserve(records.size());
  types.reserve(records.size());

  std::int64_t total = 0;
  std::int32_t current_day = records.front().day;
  double current_sum = 0.0;
  for (const auto& r : records) {
    ledger.record_access(instance_slot, FeatureGroup::interaction, r.day);
    total += r.clicks;
    sites.push_back(r.site);
    types.push_back(r.activity_type);
    if (r.day != current_day) {
      day_sums.push_back(current_sum);
      current_day = r.day;
      current_sum = 0.0;
    }
    current_sum += r.clicks;
  }
  day_sums.push_back(current_sum);

  std::sort(sites.begin(), sites.end());
  std::sort(types.begin(), types.end());
  const auto n_sites = std::unique(sites.begin(), sites.end()) - sites.begin();
  const auto n_types = std::unique(types.begin(), types.end()) - types.begin();

  const double n_days = static_cast<double>(day_sums.size());
  double mean = 0.0;
  double max = 0.0;
  for (double s : day_sums) {
    mean += s;
    max = std::max(max, s);
  }
  mean /= n_days;
  double var = 0.0;
  for (double s : day_sums) var += (s - mean) * (s - mean);
  var /= n_days;  // population variance over active days

  f.total_clicks = static_cast<double>(total);
  f.active_days = n_days;
  f.unique_resources = static_cast<double>(n_sites);
  f.unique_activity_types = static_cast<double>(n_types);
  f.daily_clicks_mean = mean;
  f.daily_clicks_std = std::sqrt(var);
  f.daily_clicks_max = max;
  return f;
}

AssessmentFeatures assessment_features(std::span<const EnrichedSubmission> records,
                                       std::size_t instance_slot, ProvenanceLedger& ledger) {
  AssessmentFeatures f;
  if (records.empty()) return f;

  double delay_sum = 0.0;
  std::size_t delay_n = 0;
  double score_sum = 0.0;
  std::size_t score_n = 0;
  for (const auto& r : records) {
    ledger.record_access(instance_slot, FeatureGroup::assessment, r.day);
    if (r.has_due) {
      delay_sum += static_cast<double>(r.day - r.due_day);
      ++delay_n;
    }
    if (r.has_score) {
      score_sum += static_cast<double>(r.score);
      ++score_n;
    }
  }
  f.n_submissions = static_cast<double>(records.size());
  f.mean_submission_delay = delay_n > 0 ? delay_sum / static_cast<double>(delay_n) : 0.0;
  f.avg_score = score_n > 0 ? score_sum / static_cast<double>(score_n) : 0.0;
  return f;
}

FeatureVector assemble(const InteractionFeatures& interaction,
                       const AssessmentFeatures& assessment) {
  FeatureVector v{};
  v[kTotalClicks] = interaction.total_clicks;
  v[kActiveDays] = interaction.active_days;
  v[kUniqueResources] = interaction.unique_resources;
  v[kUniqueActivityTypes] = interaction.unique_activity_types;
  v[kDailyClicksMean] = interaction.daily_clicks_mean;
  v[kDailyClicksStd] = interaction.daily_clicks_std;
  v[kDailyClicksMax] = interaction.daily_clicks_max;
  v[kNSubmissions] = assessment.n_submissions;
  v[kMeanSubmissionDelay] = assessment.mean_submission_delay;
  v[kAvgScore] = assessment.avg_score;
  return v;
}

namespace {

// Inserts a fabricated record into slot's day-ordered slice.  This runs after
// truncation, reproducing the footprint of a source that was truncated too
// late: the stream still looks well-formed but contains a post-cutoff day.
template <typename Record>
void insert_record(SourceView<Record>& view, std::size_t slot, Record record) {
  auto begin = view.records.begin() + static_cast<std::ptrdiff_t>(view.offsets[slot]);
  auto end = view.records.begin() + static_cast<std::ptrdiff_t>(view.offsets[slot + 1]);
  auto pos = std::upper_bound(begin, end, record.day,
                              [](std::int32_t day, const Record& r) { return day < r.day; });
  view.records.insert(pos, record);
  for (std::size_t i = slot + 1; i < view.offsets.size(); ++i) ++view.offsets[i];
}

void apply_injections(const std::vector<LeakInjection>& injections, const RawTables& tables,
                      InteractionView& interactions, SubmissionView& submissions) {
  for (const auto& inj : injections) {
    if (inj.instance_slot >= interactions.n_instances()) {
      throw ConfigError("leak injection references instance slot out of range");
    }
    if (inj.kind == SourceKind::interaction) {
      if (tables.vle.empty()) throw ConfigError("leak injection needs at least one vle row");
      insert_record(interactions, inj.instance_slot,
                    InteractionRecord{inj.day, tables.vle.front().site, 1});
    } else {
      if (tables.assessments.empty()) {
        throw ConfigError("leak injection needs at least one assessment row");
      }
      insert_record(submissions, inj.instance_slot,
                    SubmissionRecord{inj.day, tables.assessments.front().assessment, 50.0f, true});
    }
  }
}

}  // namespace

CutoffDataset build_cutoff_dataset(const Cohort& cohort, const RawTables& tables, std::int32_t t,
                                   LeakagePolicy policy,
                                   const std::vector<LeakInjection>& injections) {
  ResourceCatalog resources(tables);
  AssessmentCatalog assessments(tables);

  // Truncation comes first: each source is filtered to its effective bound at
  // view construction, before any join or aggregation sees a record.
  InteractionView interactions =
      interaction_view(cohort, effective_cutoff(policy, SourceKind::interaction, t));
  SubmissionView submissions =
      submission_view(cohort, effective_cutoff(policy, SourceKind::assessment_submission, t));

  apply_injections(injections, tables, interactions, submissions);

  CutoffDataset dataset;
  dataset.cutoff = t;
  dataset.policy = policy;

  EnrichedInteractionView enriched_interactions =
      guarded_join(interactions, resources, policy, &dataset.dropped_interaction_joins);
  EnrichedSubmissionView enriched_submissions =
      guarded_join(submissions, assessments, policy, &dataset.dropped_submission_joins);

  const std::size_t n = cohort.size();
  ProvenanceLedger ledger(n, t);
  dataset.x = Matrix(n, kNumFeatures);
  dataset.y = cohort.labels;

  for (std::size_t i = 0; i < n; ++i) {
    InteractionFeatures fi = interaction_features(
        {enriched_interactions.begin_of(i), enriched_interactions.end_of(i)}, i, ledger);
    AssessmentFeatures fa = assessment_features(
        {enriched_submissions.begin_of(i), enriched_submissions.end_of(i)}, i, ledger);
    FeatureVector v = assemble(fi, fa);
    std::copy(v.begin(), v.end(), dataset.x.row(i));
  }

  dataset.audit = audit(ledger, cohort, policy);
  if (dataset.audit.verdict == AuditVerdict::fail) {
    throw_audit_failure(dataset.audit);
  }
  return dataset;
}

void write_dataset_csv(const CutoffDataset& dataset, const Cohort& cohort,
                       const std::filesystem::path& path) {
  if (dataset.size() != cohort.size()) {
    throw DataError("dataset/cohort size mismatch in CSV export");
  }
  CsvWriter w(path);
  std::vector<std::string> header;
  for (auto name : kFeatureNames) header.emplace_back(name);
  header.emplace_back("label");
  header.emplace_back("code_module");
  header.emplace_back("code_presentation");
  header.emplace_back("id_student");
  w.write_row(header);

  char buf[64];
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    cells.clear();
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      std::snprintf(buf, sizeof(buf), "%.10g", dataset.x.at(i, j));
      cells.emplace_back(buf);
    }
    cells.emplace_back(std::to_string(static_cast<int>(dataset.y[i])));
    cells.emplace_back(cohort.keys[i].module);
    cells.emplace_back(cohort.keys[i].presentation);
    cells.emplace_back(std::to_string(cohort.keys[i].student));
    w.write_row(cells);
  }
}

}  // namespace leap
