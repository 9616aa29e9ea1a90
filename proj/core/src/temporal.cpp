#include "leap/temporal.hpp"

#include <algorithm>

#include "leap/error.hpp"

namespace leap {

std::int32_t Cutoff::day() const {
  if (!bounded_) {
    throw ProtocolViolation("attempted to read the day of an unbounded cutoff");
  }
  return day_;
}

std::string Cutoff::to_string() const {
  return bounded_ ? std::to_string(day_) : std::string("UNBOUNDED");
}

std::string_view source_kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::interaction:
      return "interaction";
    case SourceKind::assessment_submission:
      return "assessment_submission";
  }
  return "?";
}

std::string_view policy_name(LeakagePolicy policy) {
  switch (policy.mode) {
    case PolicyMode::strict:
      return "strict";
    case PolicyMode::leaky_assessment:
      return "leaky_assessment";
    case PolicyMode::leaky_all:
      return "leaky_all";
  }
  return "?";
}

LeakagePolicy parse_policy(std::string_view name) {
  // Command-line spellings use hyphens; stored files use underscores.
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  if (normalized == "strict") return LeakagePolicy{PolicyMode::strict};
  if (normalized == "leaky_assessment") return LeakagePolicy{PolicyMode::leaky_assessment};
  if (normalized == "leaky_all") return LeakagePolicy{PolicyMode::leaky_all};
  throw ConfigError("unknown leakage policy '" + std::string(name) +
                    "' (expected strict, leaky-assessment, or leaky-all)");
}

Cutoff effective_cutoff(LeakagePolicy policy, SourceKind kind, std::int32_t t) {
  return policy.allows_unbounded(kind) ? Cutoff::unbounded() : Cutoff::bounded(t);
}

InteractionView raw_interaction_view(const Cohort& cohort) {
  InteractionView view;
  view.kind = SourceKind::interaction;
  view.cutoff = Cutoff::unbounded();
  view.records.reserve(cohort.summary.interaction_records);
  view.offsets.reserve(cohort.size() + 1);
  view.offsets.push_back(0);
  for (const auto& events : cohort.interactions) {
    for (const auto& e : events) {
      view.records.push_back(InteractionRecord{e.day, e.site, e.clicks});
    }
    view.offsets.push_back(view.records.size());
  }
  return view;
}

SubmissionView raw_submission_view(const Cohort& cohort) {
  SubmissionView view;
  view.kind = SourceKind::assessment_submission;
  view.cutoff = Cutoff::unbounded();
  view.records.reserve(cohort.summary.submission_records);
  view.offsets.reserve(cohort.size() + 1);
  view.offsets.push_back(0);
  for (const auto& events : cohort.submissions) {
    for (const auto& e : events) {
      view.records.push_back(SubmissionRecord{e.day, e.assessment, e.score, e.has_score});
    }
    view.offsets.push_back(view.records.size());
  }
  return view;
}

InteractionView interaction_view(const Cohort& cohort, Cutoff cutoff) {
  InteractionView view;
  view.kind = SourceKind::interaction;
  view.cutoff = cutoff;
  view.offsets.reserve(cohort.size() + 1);
  view.offsets.push_back(0);
  for (const auto& events : cohort.interactions) {
    for (const auto& e : events) {
      if (cutoff.admits(e.day)) {
        view.records.push_back(InteractionRecord{e.day, e.site, e.clicks});
      }
    }
    view.offsets.push_back(view.records.size());
  }
  return view;
}

SubmissionView submission_view(const Cohort& cohort, Cutoff cutoff) {
  SubmissionView view;
  view.kind = SourceKind::assessment_submission;
  view.cutoff = cutoff;
  view.offsets.reserve(cohort.size() + 1);
  view.offsets.push_back(0);
  for (const auto& events : cohort.submissions) {
    for (const auto& e : events) {
      if (cutoff.admits(e.day)) {
        view.records.push_back(SubmissionRecord{e.day, e.assessment, e.score, e.has_score});
      }
    }
    view.offsets.push_back(view.records.size());
  }
  return view;
}

ResourceCatalog::ResourceCatalog(const RawTables& tables) {
  std::unordered_map<std::string, std::int16_t> type_index;
  site_type_.reserve(tables.vle.size());
  for (const auto& row : tables.vle) {
    auto it = type_index.find(row.activity_type);
    std::int16_t type_id;
    if (it == type_index.end()) {
      type_id = static_cast<std::int16_t>(type_names_.size());
      type_names_.push_back(row.activity_type);
      type_index.emplace(row.activity_type, type_id);
    } else {
      type_id = it->second;
    }
    site_type_[row.site] = type_id;
  }
}

std::optional<std::int16_t> ResourceCatalog::activity_type_of(std::int32_t site) const {
  auto it = site_type_.find(site);
  if (it == site_type_.end()) return std::nullopt;
  return it->second;
}

AssessmentCatalog::AssessmentCatalog(const RawTables& tables) {
  meta_.reserve(tables.assessments.size());
  for (const auto& row : tables.assessments) {
    meta_[row.assessment] = AssessmentMeta{row.has_due, row.due_day};
  }
}

std::optional<AssessmentMeta> AssessmentCatalog::meta_of(std::int32_t assessment) const {
  auto it = meta_.find(assessment);
  if (it == meta_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_view_admissible(const Cutoff& cutoff, SourceKind kind, LeakagePolicy policy) {
  if (!cutoff.is_bounded() && !policy.allows_unbounded(kind)) {
    throw ProtocolViolation(std::string("guarded join refused: ") +
                            std::string(source_kind_name(kind)) +
                            " view is untruncated under the " +
                            std::string(policy_name(policy)) + " policy");
  }
}

}  // namespace

EnrichedInteractionView guarded_join(const InteractionView& view, const ResourceCatalog& catalog,
                                     LeakagePolicy policy, std::size_t* dropped) {
  check_view_admissible(view.cutoff, view.kind, policy);
  EnrichedInteractionView out;
  out.cutoff = view.cutoff;
  out.kind = view.kind;
  out.records.reserve(view.records.size());
  out.offsets.reserve(view.offsets.size());
  out.offsets.push_back(0);
  std::size_t n_dropped = 0;
  for (std::size_t slot = 0; slot < view.n_instances(); ++slot) {
    for (const auto* r = view.begin_of(slot); r != view.end_of(slot); ++r) {
      auto type_id = catalog.activity_type_of(r->site);
      if (!type_id) {
        ++n_dropped;
        continue;
      }
      out.records.push_back(EnrichedInteraction{r->day, r->site, r->clicks, *type_id});
    }
    out.offsets.push_back(out.records.size());
  }
  if (dropped) *dropped = n_dropped;
  return out;
}

EnrichedSubmissionView guarded_join(const SubmissionView& view, const AssessmentCatalog& catalog,
                                    LeakagePolicy policy, std::size_t* dropped) {
  check_view_admissible(view.cutoff, view.kind, policy);
  EnrichedSubmissionView out;
  out.cutoff = view.cutoff;
  out.kind = view.kind;
  out.records.reserve(view.records.size());
  out.offsets.reserve(view.offsets.size());
  out.offsets.push_back(0);
  std::size_t n_dropped = 0;
  for (std::size_t slot = 0; slot < view.n_instances(); ++slot) {
    for (const auto* r = view.begin_of(slot); r != view.end_of(slot); ++r) {
      auto meta = catalog.meta_of(r->assessment);
      if (!meta) {
        ++n_dropped;
        continue;
      }
      out.records.push_back(EnrichedSubmission{r->day, r->assessment, r->score, r->has_score,
                                               meta->has_due, meta->due_day});
    }
    out.offsets.push_back(out.records.size());
  }
  if (dropped) *dropped = n_dropped;
  return out;
}

SourceView<InteractionSubmissionPair> guarded_join(const InteractionView& a,
                                                   const SubmissionView& b,
                                                   LeakagePolicy policy) {
  check_view_admissible(a.cutoff, a.kind, policy);
  check_view_admissible(b.cutoff, b.kind, policy);
  if (a.cutoff.is_bounded() && b.cutoff.is_bounded() && a.cutoff != b.cutoff) {
    throw ProtocolViolation("guarded join refused: cutoff mismatch (" + a.cutoff.to_string() +
                            " vs " + b.cutoff.to_string() + ")");
  }
  if (a.n_instances() != b.n_instances()) {
    throw ProtocolViolation("guarded join refused: instance count mismatch");
  }
  SourceView<InteractionSubmissionPair> out;
  out.cutoff = (a.cutoff.is_bounded() && b.cutoff.is_bounded()) ? a.cutoff : Cutoff::unbounded();
  out.kind = a.kind;
  out.offsets.reserve(a.offsets.size());
  out.offsets.push_back(0);
  for (std::size_t slot = 0; slot < a.n_instances(); ++slot) {
    for (const auto* x = a.begin_of(slot); x != a.end_of(slot); ++x) {
      for (const auto* y = b.begin_of(slot); y != b.end_of(slot); ++y) {
        out.records.push_back(InteractionSubmissionPair{*x, *y});
      }
    }
    out.offsets.push_back(out.records.size());
  }
  return out;
}

}  // namespace leap
