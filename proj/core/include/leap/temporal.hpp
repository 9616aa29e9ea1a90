#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "leap/dataset.hpp"

namespace leap {

// A truncation bound: either day t (inclusive) or no bound at all.  The
// unbounded state is a distinct sentinel, deliberately not a large day value,
// so a numeric comparison can never silently treat it as satisfied.
class Cutoff {
 public:
  static Cutoff bounded(std::int32_t day) { return Cutoff(true, day); }
  static Cutoff unbounded() { return Cutoff(false, 0); }

  bool is_bounded() const { return bounded_; }
  std::int32_t day() const;  // throws on unbounded
  bool admits(std::int32_t record_day) const {
    return !bounded_ || record_day <= day_;
  }
  std::string to_string() const;

  bool operator==(const Cutoff&) const = default;

 private:
  Cutoff(bool bounded, std::int32_t day) : bounded_(bounded), day_(day) {}
  bool bounded_ = false;
  std::int32_t day_ = 0;
};

enum class SourceKind : std::uint8_t { interaction, assessment_submission };

std::string_view source_kind_name(SourceKind kind);

enum class PolicyMode : std::uint8_t { strict, leaky_assessment, leaky_all };

struct LeakagePolicy {
  PolicyMode mode = PolicyMode::strict;

  bool allows_unbounded(SourceKind kind) const {
    switch (mode) {
      case PolicyMode::strict:
        return false;
      case PolicyMode::leaky_assessment:
        return kind == SourceKind::assessment_submission;
      case PolicyMode::leaky_all:
        return true;
    }
    return false;
  }

  bool operator==(const LeakagePolicy&) const = default;
};

std::string_view policy_name(LeakagePolicy policy);
LeakagePolicy parse_policy(std::string_view name);  // throws ConfigError

// Which bound applies to a source under a policy: the leaky diagnostics leave
// chosen source kinds untruncated on purpose.
Cutoff effective_cutoff(LeakagePolicy policy, SourceKind kind, std::int32_t t);

// Timestamped records, whole-cohort, grouped by instance slot.
// offsets has n_instances + 1 entries; records of slot i occupy
// [offsets[i], offsets[i+1]).
template <typename Record>
struct SourceView {
  std::vector<Record> records;
  std::vector<std::size_t> offsets;
  Cutoff cutoff = Cutoff::unbounded();
  SourceKind kind = SourceKind::interaction;

  std::size_t n_instances() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  const Record* begin_of(std::size_t slot) const { return records.data() + offsets[slot]; }
  const Record* end_of(std::size_t slot) const { return records.data() + offsets[slot + 1]; }
};

struct InteractionRecord {
  std::int32_t day = 0;
  std::int32_t site = 0;
  std::int32_t clicks = 0;
  bool operator==(const InteractionRecord&) const = default;
};

struct SubmissionRecord {
  std::int32_t day = 0;
  std::int32_t assessment = 0;
  float score = 0.0f;
  bool has_score = false;
  bool operator==(const SubmissionRecord&) const = default;
};

using InteractionView = SourceView<InteractionRecord>;
using SubmissionView = SourceView<SubmissionRecord>;

// Untruncated views over the cohort's record streams.
InteractionView raw_interaction_view(const Cohort& cohort);
SubmissionView raw_submission_view(const Cohort& cohort);

// Builds the view already filtered to the bound, skipping the intermediate
// raw copy.  Equivalent to truncate(raw_*_view(cohort), t) when bounded and
// to raw_*_view(cohort) when not; the equivalence is covered by tests.
InteractionView interaction_view(const Cohort& cohort, Cutoff cutoff);
SubmissionView submission_view(const Cohort& cohort, Cutoff cutoff);

// Keeps exactly the records with day <= t; sets the view's cutoff.
// Truncation must run before any join or aggregation touches the records.
template <typename Record>
SourceView<Record> truncate(const SourceView<Record>& source, std::int32_t t) {
  SourceView<Record> out;
  out.cutoff = Cutoff::bounded(t);
  out.kind = source.kind;
  out.offsets.reserve(source.offsets.size());
  out.offsets.push_back(0);
  for (std::size_t slot = 0; slot < source.n_instances(); ++slot) {
    for (const Record* r = source.begin_of(slot); r != source.end_of(slot); ++r) {
      if (r->day <= t) out.records.push_back(*r);
    }
    out.offsets.push_back(out.records.size());
  }
  return out;
}

// Metadata catalogs.  These tables carry no event timestamp (course structure
// known in advance), so they are exempt from truncation; their fields reach
// features only through the timestamped rows they join to.
class ResourceCatalog {
 public:
  explicit ResourceCatalog(const RawTables& tables);

  // activity-type id for a site, or nullopt for unresolvable references
  std::optional<std::int16_t> activity_type_of(std::int32_t site) const;
  const std::string& type_name(std::int16_t id) const { return type_names_[static_cast<std::size_t>(id)]; }
  std::size_t n_types() const { return type_names_.size(); }

 private:
  std::unordered_map<std::int32_t, std::int16_t> site_type_;
  std::vector<std::string> type_names_;
};

struct AssessmentMeta {
  bool has_due = false;
  std::int32_t due_day = 0;
};

class AssessmentCatalog {
 public:
  explicit AssessmentCatalog(const RawTables& tables);
  std::optional<AssessmentMeta> meta_of(std::int32_t assessment) const;

 private:
  std::unordered_map<std::int32_t, AssessmentMeta> meta_;
};

// Join outputs: the timestamped payload plus the metadata fields it resolved.
struct EnrichedInteraction {
  std::int32_t day = 0;
  std::int32_t site = 0;
  std::int32_t clicks = 0;
  std::int16_t activity_type = 0;
  bool operator==(const EnrichedInteraction&) const = default;
};

struct EnrichedSubmission {
  std::int32_t day = 0;
  std::int32_t assessment = 0;
  float score = 0.0f;
  bool has_score = false;
  bool has_due = false;
  std::int32_t due_day = 0;
  bool operator==(const EnrichedSubmission&) const = default;
};

using EnrichedInteractionView = SourceView<EnrichedInteraction>;
using EnrichedSubmissionView = SourceView<EnrichedSubmission>;

// Guarded joins: refuse inputs whose truncation state the policy does not
// admit, so no code path can aggregate post-cutoff records under strict runs.
// Metadata sides are equi-joined (inner join; unresolvable keys drop the row),
// each output row keeps the day of its timestamped side, and the output
// inherits the timestamped input's cutoff.
EnrichedInteractionView guarded_join(const InteractionView& view, const ResourceCatalog& catalog,
                                     LeakagePolicy policy, std::size_t* dropped = nullptr);
EnrichedSubmissionView guarded_join(const SubmissionView& view, const AssessmentCatalog& catalog,
                                    LeakagePolicy policy, std::size_t* dropped = nullptr);

// Record-with-record variant, keyed on the instance slot.  Both sides must
// carry the same bound; a bounded/unbounded mix is admitted only where the
// policy allows that side to be unbounded, and the result is then marked
// unbounded because it can contain post-cutoff rows.
struct InteractionSubmissionPair {
  InteractionRecord interaction;
  SubmissionRecord submission;
};

SourceView<InteractionSubmissionPair> guarded_join(const InteractionView& a,
                                                   const SubmissionView& b,
                                                   LeakagePolicy policy);

}  // namespace leap
