#include "leap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <unordered_set>
#include <utility>

#include "leap/csv.hpp"
#include "leap/error.hpp"

namespace leap {
namespace {

std::string run_key(std::string_view module, std::string_view presentation) {
  std::string key;
  key.reserve(module.size() + presentation.size() + 1);
  key.append(module);
  key.push_back('\x1f');
  key.append(presentation);
  return key;
}

}  // namespace

Label derive_label(std::string_view final_result) {
  if (final_result == "Pass" || final_result == "Distinction") return Label{1};
  if (final_result == "Fail" || final_result == "Withdrawn") return Label{0};
  throw DataError("unrecognized final_result value: '" + std::string(final_result) + "'");
}

std::int16_t RunBook::intern(std::string_view module, std::string_view presentation) {
  std::string key = run_key(module, presentation);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (runs_.size() >= 32767) throw DataError("too many distinct course runs");
  auto id = static_cast<std::int16_t>(runs_.size());
  runs_.emplace_back(std::string(module), std::string(presentation));
  index_.emplace(std::move(key), id);
  return id;
}

std::int16_t RunBook::lookup(std::string_view module, std::string_view presentation) const {
  auto it = index_.find(run_key(module, presentation));
  if (it == index_.end()) {
    throw DataError("unknown course run: " + std::string(module) + "/" +
                    std::string(presentation));
  }
  return it->second;
}

namespace {

std::filesystem::path table_path(const std::filesystem::path& root, std::string_view file) {
  std::filesystem::path p = root / file;
  if (!std::filesystem::exists(p)) {
    throw DataError("missing input table: " + p.string());
  }
  return p;
}

void load_student_info(const std::filesystem::path& root, RawTables& out) {
  CsvReader reader(table_path(root, kStudentInfoFile));
  const std::size_t c_module = reader.column("code_module");
  const std::size_t c_pres = reader.column("code_presentation");
  const std::size_t c_student = reader.column("id_student");
  const std::size_t c_result = reader.column("final_result");

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    StudentInfoRow row;
    row.run = out.runs.intern(fields[c_module], fields[c_pres]);
    row.student = parse_int_field(reader, fields[c_student], "id_student");
    row.final_result = std::string(fields[c_result]);
    out.student_info.push_back(std::move(row));
  }
  out.ingest.student_info_rows = out.student_info.size();
}

void load_student_vle(const std::filesystem::path& root, RawTables& out) {
  CsvReader reader(table_path(root, kStudentVleFile));
  const std::size_t c_module = reader.column("code_module");
  const std::size_t c_pres = reader.column("code_presentation");
  const std::size_t c_student = reader.column("id_student");
  const std::size_t c_site = reader.column("id_site");
  const std::size_t c_date = reader.column("date");
  const std::size_t c_clicks = reader.column("sum_click");

  std::unordered_set<std::int32_t> known_sites;
  known_sites.reserve(out.vle.size());
  for (const auto& row : out.vle) known_sites.insert(row.site);

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    StudentVleRow row;
    row.run = out.runs.intern(fields[c_module], fields[c_pres]);
    row.student = parse_int_field(reader, fields[c_student], "id_student");
    row.site = parse_int_field(reader, fields[c_site], "id_site");
    row.day = parse_int_field(reader, fields[c_date], "date");
    row.clicks = parse_int_field(reader, fields[c_clicks], "sum_click");
    if (row.clicks < 1) {
      throw DataError(reader.path().string() + ":" + std::to_string(reader.line_number()) +
                      ": sum_click must be >= 1");
    }
    if (!known_sites.contains(row.site)) ++out.ingest.unresolved_site_refs;
    out.student_vle.push_back(row);
  }
  out.ingest.student_vle_rows = out.student_vle.size();
}

void load_vle(const std::filesystem::path& root, RawTables& out) {
  CsvReader reader(table_path(root, kVleFile));
  const std::size_t c_site = reader.column("id_site");
  const std::size_t c_type = reader.column("activity_type");

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    VleRow row;
    row.site = parse_int_field(reader, fields[c_site], "id_site");
    row.activity_type = std::string(fields[c_type]);
    out.vle.push_back(std::move(row));
  }
  out.ingest.vle_rows = out.vle.size();
}

void load_assessments(const std::filesystem::path& root, RawTables& out) {
  CsvReader reader(table_path(root, kAssessmentsFile));
  const std::size_t c_module = reader.column("code_module");
  const std::size_t c_pres = reader.column("code_presentation");
  const std::size_t c_id = reader.column("id_assessment");
  const std::size_t c_date = reader.column("date");

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    AssessmentRow row;
    row.run = out.runs.intern(fields[c_module], fields[c_pres]);
    row.assessment = parse_int_field(reader, fields[c_id], "id_assessment");
    if (!csv_field_missing(fields[c_date])) {
      row.has_due = true;
      row.due_day = parse_int_field(reader, fields[c_date], "date");
    } else {
      ++out.ingest.undated_assessments;
    }
    out.assessments.push_back(row);
  }
  out.ingest.assessment_rows = out.assessments.size();
}

void load_student_assessment(const std::filesystem::path& root, RawTables& out) {
  CsvReader reader(table_path(root, kStudentAssessmentFile));
  const std::size_t c_id = reader.column("id_assessment");
  const std::size_t c_student = reader.column("id_student");
  const std::size_t c_date = reader.column("date_submitted");
  const std::size_t c_score = reader.column("score");

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    StudentAssessmentRow row;
    row.assessment = parse_int_field(reader, fields[c_id], "id_assessment");
    row.student = parse_int_field(reader, fields[c_student], "id_student");
    if (!csv_field_missing(fields[c_date])) {
      row.has_day = true;
      row.day_submitted = parse_int_field(reader, fields[c_date], "date_submitted");
    } else {
      ++out.ingest.undated_submissions;
    }
    if (!csv_field_missing(fields[c_score])) {
      row.has_score = true;
      row.score = parse_real_field(reader, fields[c_score], "score");
      if (row.score < 0.0 || row.score > 100.0) {
        throw DataError(reader.path().string() + ":" + std::to_string(reader.line_number()) +
                        ": score outside [0, 100]");
      }
    } else {
      ++out.ingest.unscored_submissions;
    }
    out.student_assessment.push_back(row);
  }
  out.ingest.student_assessment_rows = out.student_assessment.size();
}

}  // namespace

RawTables load_tables(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) {
    throw DataError("data directory not found: " + root.string());
  }
  RawTables tables;
  load_student_info(root, tables);
  load_vle(root, tables);
  load_student_vle(root, tables);
  load_assessments(root, tables);
  load_student_assessment(root, tables);
  return tables;
}

void write_tables(const RawTables& tables, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    CsvWriter w(out_dir / kStudentInfoFile);
    w.write_row({"code_module", "code_presentation", "id_student", "final_result"});
    for (const auto& row : tables.student_info) {
      const auto& [module, pres] = tables.runs.name(row.run);
      w.write_row({module, pres, std::to_string(row.student), row.final_result});
    }
  }
  {
    CsvWriter w(out_dir / kStudentVleFile);
    w.write_row({"code_module", "code_presentation", "id_student", "id_site", "date",
                 "sum_click"});
    for (const auto& row : tables.student_vle) {
      const auto& [module, pres] = tables.runs.name(row.run);
      w.write_row({module, pres, std::to_string(row.student), std::to_string(row.site),
                   std::to_string(row.day), std::to_string(row.clicks)});
    }
  }
  {
    CsvWriter w(out_dir / kVleFile);
    w.write_row({"id_site", "code_module", "code_presentation", "activity_type"});
    for (const auto& row : tables.vle) {
      w.write_row({std::to_string(row.site), "", "", row.activity_type});
    }
  }
  {
    CsvWriter w(out_dir / kAssessmentsFile);
    w.write_row({"code_module", "code_presentation", "id_assessment", "date"});
    for (const auto& row : tables.assessments) {
      const auto& [module, pres] = tables.runs.name(row.run);
      w.write_row({module, pres, std::to_string(row.assessment),
                   row.has_due ? std::to_string(row.due_day) : ""});
    }
  }
  {
    CsvWriter w(out_dir / kStudentAssessmentFile);
    w.write_row({"id_assessment", "id_student", "date_submitted", "score"});
    for (const auto& row : tables.student_assessment) {
      char score_buf[32];
      std::string score;
      if (row.has_score) {
        std::snprintf(score_buf, sizeof(score_buf), "%g", row.score);
        score = score_buf;
      }
      w.write_row({std::to_string(row.assessment), std::to_string(row.student),
                   row.has_day ? std::to_string(row.day_submitted) : "", score});
    }
  }
}

Cohort build_cohort(const RawTables& tables) {
  Cohort cohort;
  cohort.keys.reserve(tables.student_info.size());
  std::vector<std::uint8_t> raw_labels;
  raw_labels.reserve(tables.student_info.size());

  // (run, student) -> position in the original student_info order.
  std::map<std::pair<std::int16_t, std::int32_t>, std::size_t> instance_of;
  for (std::size_t i = 0; i < tables.student_info.size(); ++i) {
    const auto& row = tables.student_info[i];
    auto [it, inserted] = instance_of.emplace(std::make_pair(row.run, row.student), i);
    if (!inserted) {
      const auto& [module, pres] = tables.runs.name(row.run);
      throw DataError("duplicate enrolment row: " + module + "/" + pres + "/" +
                      std::to_string(row.student));
    }
  }

  // Sort instances by (module, presentation, student).
  std::vector<std::size_t> order(tables.student_info.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = tables.student_info[a];
    const auto& rb = tables.student_info[b];
    const auto& na = tables.runs.name(ra.run);
    const auto& nb = tables.runs.name(rb.run);
    if (na != nb) return na < nb;
    return ra.student < rb.student;
  });

  std::vector<std::size_t> slot_of(order.size());
  for (std::size_t slot = 0; slot < order.size(); ++slot) slot_of[order[slot]] = slot;

  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const auto& row = tables.student_info[order[slot]];
    const auto& [module, pres] = tables.runs.name(row.run);
    cohort.keys.push_back(InstanceKey{module, pres, row.student});
    cohort.labels.push_back(derive_label(row.final_result).value);
  }

  cohort.interactions.resize(cohort.keys.size());
  cohort.submissions.resize(cohort.keys.size());

  CohortSummary& summary = cohort.summary;
  summary.n_instances = cohort.keys.size();
  summary.n_runs = tables.runs.size();
  for (std::uint8_t y : cohort.labels) summary.positives += y;
  summary.positive_fraction =
      cohort.keys.empty() ? 0.0
                          : static_cast<double>(summary.positives) /
                                static_cast<double>(cohort.keys.size());

  for (const auto& row : tables.student_vle) {
    auto it = instance_of.find(std::make_pair(row.run, row.student));
    if (it == instance_of.end()) {
      ++summary.dropped_vle_rows;
      continue;
    }
    cohort.interactions[slot_of[it->second]].push_back(
        InteractionEvent{row.day, row.site, row.clicks});
  }

  // id_assessment -> owning run, for attaching submissions to instances.
  std::unordered_map<std::int32_t, std::int16_t> run_of_assessment;
  run_of_assessment.reserve(tables.assessments.size());
  for (const auto& row : tables.assessments) {
    run_of_assessment[row.assessment] = row.run;
  }

  std::map<std::pair<std::size_t, std::int32_t>, std::size_t> submission_seen;
  for (const auto& row : tables.student_assessment) {
    if (!row.has_day) continue;  // banked/transferred result; already counted at ingest
    auto run_it = run_of_assessment.find(row.assessment);
    if (run_it == run_of_assessment.end()) {
      ++summary.dropped_submission_rows;
      continue;
    }
    auto it = instance_of.find(std::make_pair(run_it->second, row.student));
    if (it == instance_of.end()) {
      ++summary.dropped_submission_rows;
      continue;
    }
    std::size_t slot = slot_of[it->second];
    auto [seen_it, first] = submission_seen.emplace(std::make_pair(slot, row.assessment), 1u);
    if (!first) ++summary.duplicate_submissions;
    cohort.submissions[slot].push_back(SubmissionEvent{
        row.day_submitted, row.assessment, static_cast<float>(row.score), row.has_score});
  }

  for (auto& events : cohort.interactions) {
    std::stable_sort(events.begin(), events.end(),
                     [](const InteractionEvent& a, const InteractionEvent& b) {
                       return a.day < b.day;
                     });
    summary.interaction_records += events.size();
  }
  for (auto& events : cohort.submissions) {
    std::stable_sort(events.begin(), events.end(),
                     [](const SubmissionEvent& a, const SubmissionEvent& b) {
                       return a.day < b.day;
                     });
    summary.submission_records += events.size();
  }
  return cohort;
}

}  // namespace leap
