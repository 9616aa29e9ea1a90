#include "leap/provenance.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "leap/error.hpp"

namespace leap {

std::string_view feature_group_name(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::interaction:
      return "Interaction";
    case FeatureGroup::assessment:
      return "Assessment";
  }
  return "?";
}

std::string_view audit_verdict_name(AuditVerdict verdict) {
  switch (verdict) {
    case AuditVerdict::pass:
      return "pass";
    case AuditVerdict::pass_with_diagnostics:
      return "pass_with_diagnostics";
    case AuditVerdict::fail:
      return "fail";
  }
  return "?";
}

ProvenanceLedger::ProvenanceLedger(std::size_t n_instances, std::int32_t cutoff)
    : n_instances_(n_instances), cutoff_(cutoff) {
  for (auto& days : max_day_) days.assign(n_instances, kNoEntry);
}

void ProvenanceLedger::record_access(std::size_t instance_slot, FeatureGroup group,
                                     std::int32_t day) {
  auto& cell = max_day_[static_cast<std::size_t>(group)][instance_slot];
  cell = std::max(cell, day);
}

bool ProvenanceLedger::has_entry(std::size_t instance_slot, FeatureGroup group) const {
  return max_day_[static_cast<std::size_t>(group)][instance_slot] != kNoEntry;
}

std::int32_t ProvenanceLedger::entry(std::size_t instance_slot, FeatureGroup group) const {
  return max_day_[static_cast<std::size_t>(group)][instance_slot];
}

void ProvenanceLedger::merge(const ProvenanceLedger& other) {
  if (other.n_instances_ != n_instances_ || other.cutoff_ != cutoff_) {
    throw ProtocolViolation("ledger merge across different runs");
  }
  for (std::size_t g = 0; g < kNumFeatureGroups; ++g) {
    for (std::size_t i = 0; i < n_instances_; ++i) {
      max_day_[g][i] = std::max(max_day_[g][i], other.max_day_[g][i]);
    }
  }
}

AuditReport audit(const ProvenanceLedger& ledger, const Cohort& cohort, LeakagePolicy policy) {
  if (ledger.n_instances() != cohort.size()) {
    throw ProtocolViolation("audit: ledger does not cover the cohort");
  }
  AuditReport report;
  report.cutoff = ledger.cutoff();
  report.policy = policy;
  for (std::size_t g = 0; g < kNumFeatureGroups; ++g) {
    const auto group = static_cast<FeatureGroup>(g);
    for (std::size_t i = 0; i < ledger.n_instances(); ++i) {
      if (!ledger.has_entry(i, group)) continue;
      const std::int32_t day = ledger.entry(i, group);
      report.group_max[g] = std::max(report.group_max[g], day);
      if (day > report.cutoff) {
        const InstanceKey& key = cohort.keys[i];
        report.violations.push_back(LeakViolation{key.module, key.presentation, key.student,
                                                  std::string(feature_group_name(group)), day});
      }
    }
  }
  if (report.violations.empty()) {
    report.verdict = AuditVerdict::pass;
  } else if (policy.mode == PolicyMode::strict) {
    report.verdict = AuditVerdict::fail;
  } else {
    report.verdict = AuditVerdict::pass_with_diagnostics;
  }
  return report;
}

void throw_audit_failure(const AuditReport& report) {
  std::string message = "availability audit failed at cutoff " + std::to_string(report.cutoff) +
                        ": " + std::to_string(report.violations.size()) +
                        " ledger entries exceed the cutoff";
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    message += " (first: " + v.module + "/" + v.presentation + "/" + std::to_string(v.student) +
               " " + v.group + " day " + std::to_string(v.max_day) + ")";
  }
  throw ProtocolViolation(message, report.violations, report.cutoff);
}

namespace {

void write_one_report(std::ostream& out, const AuditReport& report) {
  for (const auto& v : report.violations) {
    nlohmann::json line = {
        {"record", "violation"}, {"module", v.module},   {"presentation", v.presentation},
        {"student", v.student},  {"group", v.group},     {"max_day", v.max_day},
        {"cutoff", report.cutoff},
    };
    out << line.dump() << '\n';
  }
  nlohmann::json summary = {
      {"record", "summary"},
      {"cutoff", report.cutoff},
      {"policy", std::string(policy_name(report.policy))},
      {"violations", report.violations.size()},
      {"verdict", std::string(audit_verdict_name(report.verdict))},
  };
  for (std::size_t g = 0; g < kNumFeatureGroups; ++g) {
    const char* key = g == 0 ? "max_day_interaction" : "max_day_assessment";
    if (report.group_max[g] == ProvenanceLedger::kNoEntry) {
      summary[key] = nullptr;
    } else {
      summary[key] = report.group_max[g];
    }
  }
  out << summary.dump() << '\n';
}

}  // namespace

void write_audit_jsonl(const AuditReport& report, const std::filesystem::path& path) {
  write_audit_jsonl(std::vector<AuditReport>{report}, path);
}

void write_audit_jsonl(const std::vector<AuditReport>& reports,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open audit log for writing: " + path.string());
  for (const AuditReport& report : reports) write_one_report(out, report);
  if (!out) throw DataError("failed writing audit log: " + path.string());
}

}  // namespace leap
