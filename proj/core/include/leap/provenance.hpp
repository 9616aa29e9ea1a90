#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string_view>
#include <vector>

#include "leap/dataset.hpp"
#include "leap/error.hpp"
#include "leap/temporal.hpp"

namespace leap {

enum class FeatureGroup : std::uint8_t { interaction = 0, assessment = 1 };
inline constexpr std::size_t kNumFeatureGroups = 2;

std::string_view feature_group_name(FeatureGroup group);

// Per (instance, group) maximum accessed day for one feature build.
// Absence of an entry is distinct from an entry of day 0, so the sentinel is
// the most negative day, which no record can carry.
class ProvenanceLedger {
 public:
  static constexpr std::int32_t kNoEntry = std::numeric_limits<std::int32_t>::min();

  ProvenanceLedger(std::size_t n_instances, std::int32_t cutoff);

  void record_access(std::size_t instance_slot, FeatureGroup group, std::int32_t day);
  bool has_entry(std::size_t instance_slot, FeatureGroup group) const;
  std::int32_t entry(std::size_t instance_slot, FeatureGroup group) const;  // kNoEntry if absent
  std::int32_t cutoff() const { return cutoff_; }
  std::size_t n_instances() const { return n_instances_; }

  // Entrywise max; used to combine per-worker shards before the audit.
  void merge(const ProvenanceLedger& other);

 private:
  std::size_t n_instances_;
  std::int32_t cutoff_;
  std::vector<std::int32_t> max_day_[kNumFeatureGroups];
};

enum class AuditVerdict : std::uint8_t { pass, pass_with_diagnostics, fail };

std::string_view audit_verdict_name(AuditVerdict verdict);

struct AuditReport {
  std::int32_t cutoff = 0;
  LeakagePolicy policy;
  // max recorded day over all instances, per group; kNoEntry when the group
  // recorded nothing at all
  std::int32_t group_max[kNumFeatureGroups] = {ProvenanceLedger::kNoEntry,
                                               ProvenanceLedger::kNoEntry};
  std::vector<LeakViolation> violations;
  AuditVerdict verdict = AuditVerdict::pass;

  bool ok() const { return verdict != AuditVerdict::fail; }
};

// Scans the ledger for entries past the cutoff.  Under strict the verdict is
// fail and the caller must abort; under the leaky policies violations are the
// expected diagnostics and the run continues.
AuditReport audit(const ProvenanceLedger& ledger, const Cohort& cohort, LeakagePolicy policy);

// Raises ProtocolViolation carrying the report's violation list.
[[noreturn]] void throw_audit_failure(const AuditReport& report);

// Line-delimited JSON: one object per violation, then one summary object per
// report.  The vector overload writes a whole run's audits into one file.
void write_audit_jsonl(const AuditReport& report, const std::filesystem::path& path);
void write_audit_jsonl(const std::vector<AuditReport>& reports,
                       const std::filesystem::path& path);

}  // namespace leap
