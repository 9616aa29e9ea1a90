#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace leap {

// One learner in one course run.
struct InstanceKey {
  std::string module;
  std::string presentation;
  std::int32_t student = 0;

  auto operator<=>(const InstanceKey&) const = default;

  std::string to_string() const {
    return module + "/" + presentation + "/" + std::to_string(student);
  }
};

// Binary end-of-course outcome derived from final_result.
struct Label {
  std::uint8_t value = 0;
};

// Maps the four stored outcome strings: Pass/Distinction -> 1,
// Fail/Withdrawn -> 0.  Anything else (including case variants) is an error.
Label derive_label(std::string_view final_result);

// Interned (code_module, code_presentation) pairs.  studentVle alone has
// ~10M rows; keeping two strings per row is not an option.
class RunBook {
 public:
  std::int16_t intern(std::string_view module, std::string_view presentation);
  std::int16_t lookup(std::string_view module, std::string_view presentation) const;
  const std::pair<std::string, std::string>& name(std::int16_t id) const {
    return runs_[static_cast<std::size_t>(id)];
  }
  std::size_t size() const { return runs_.size(); }

  bool operator==(const RunBook&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> runs_;
  std::unordered_map<std::string, std::int16_t> index_;
};

struct StudentInfoRow {
  std::int16_t run = 0;
  std::int32_t student = 0;
  std::string final_result;
  bool operator==(const StudentInfoRow&) const = default;
};

struct StudentVleRow {
  std::int16_t run = 0;
  std::int32_t student = 0;
  std::int32_t site = 0;
  std::int32_t day = 0;  // may be negative (pre-course activity)
  std::int32_t clicks = 0;
  bool operator==(const StudentVleRow&) const = default;
};

struct VleRow {
  std::int32_t site = 0;
  std::string activity_type;
  bool operator==(const VleRow&) const = default;
};

struct AssessmentRow {
  std::int32_t assessment = 0;
  std::int16_t run = 0;
  bool has_due = false;
  std::int32_t due_day = 0;
  bool operator==(const AssessmentRow&) const = default;
};

struct StudentAssessmentRow {
  std::int32_t assessment = 0;
  std::int32_t student = 0;
  bool has_day = false;  // absent for banked/transferred results
  std::int32_t day_submitted = 0;
  bool has_score = false;
  double score = 0.0;
  bool operator==(const StudentAssessmentRow&) const = default;
};

struct IngestReport {
  std::size_t student_info_rows = 0;
  std::size_t student_vle_rows = 0;
  std::size_t vle_rows = 0;
  std::size_t assessment_rows = 0;
  std::size_t student_assessment_rows = 0;
  std::size_t unresolved_site_refs = 0;        // studentVle.id_site not in vle
  std::size_t undated_submissions = 0;         // no date_submitted; excluded from features
  std::size_t unscored_submissions = 0;        // submission kept, score missing
  std::size_t undated_assessments = 0;         // metadata rows without a due day
  bool operator==(const IngestReport&) const = default;
};

struct RawTables {
  RunBook runs;
  std::vector<StudentInfoRow> student_info;
  std::vector<StudentVleRow> student_vle;
  std::vector<VleRow> vle;
  std::vector<AssessmentRow> assessments;
  std::vector<StudentAssessmentRow> student_assessment;
  IngestReport ingest;
  bool operator==(const RawTables&) const = default;
};

inline constexpr std::string_view kStudentInfoFile = "studentInfo.csv";
inline constexpr std::string_view kStudentVleFile = "studentVle.csv";
inline constexpr std::string_view kVleFile = "vle.csv";
inline constexpr std::string_view kAssessmentsFile = "assessments.csv";
inline constexpr std::string_view kStudentAssessmentFile = "studentAssessment.csv";

// Reads the five OULAD-schema CSVs from a directory.  Columns are located by
// header name, so the full public OULAD files (with demographic columns the
// pipeline never uses) parse unchanged.
RawTables load_tables(const std::filesystem::path& root);

// Writes tables back out in the same five-file format (used by the synthetic
// generator and round-trip checks).
void write_tables(const RawTables& tables, const std::filesystem::path& out_dir);

// Timestamped per-instance record streams, split by source kind.
struct InteractionEvent {
  std::int32_t day = 0;
  std::int32_t site = 0;
  std::int32_t clicks = 0;
  bool operator==(const InteractionEvent&) const = default;
};

struct SubmissionEvent {
  std::int32_t day = 0;  // date_submitted
  std::int32_t assessment = 0;
  float score = 0.0f;
  bool has_score = false;
  bool operator==(const SubmissionEvent&) const = default;
};

struct CohortSummary {
  std::size_t n_instances = 0;
  std::size_t n_runs = 0;
  std::size_t positives = 0;
  double positive_fraction = 0.0;
  std::size_t interaction_records = 0;
  std::size_t submission_records = 0;
  std::size_t dropped_vle_rows = 0;         // studentVle rows with no matching instance
  std::size_t dropped_submission_rows = 0;  // studentAssessment rows with no matching instance
  std::size_t duplicate_submissions = 0;    // repeat (instance, assessment) pairs, kept as-is
};

// Immutable after construction; safe to share read-only across workers.
class Cohort {
 public:
  std::vector<InstanceKey> keys;                            // sorted (module, presentation, student)
  std::vector<std::uint8_t> labels;                         // parallel to keys
  std::vector<std::vector<InteractionEvent>> interactions;  // per instance, day order
  std::vector<std::vector<SubmissionEvent>> submissions;    // per instance, day order
  CohortSummary summary;

  std::size_t size() const { return keys.size(); }
};

Cohort build_cohort(const RawTables& tables);

}  // namespace leap
