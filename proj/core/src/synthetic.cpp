#include "leap/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leap/error.hpp"
#include "leap/rng.hpp"

namespace leap {
namespace {

constexpr std::int32_t kFirstSiteId = 60001;
constexpr std::int32_t kNumSites = 40;
constexpr std::int32_t kFirstAssessmentId = 20001;
constexpr std::int32_t kFirstStudentId = 100000;
constexpr std::int32_t kPreCourseDays = 5;  // activity may start before day 0

const char* const kActivityTypes[] = {"resource", "oucontent", "forumng",
                                      "quiz",     "homepage",  "subpage"};
constexpr std::size_t kNumActivityTypes = sizeof(kActivityTypes) / sizeof(kActivityTypes[0]);

double round1(double x) { return std::round(x * 10.0) / 10.0; }

}  // namespace

void SynthConfig::validate() const {
  if (n_instances == 0) throw ConfigError("synthetic n_instances must be positive");
  if (course_length_days <= 0) throw ConfigError("synthetic course_length_days must be positive");
  if (!(positive_rate > 0.0 && positive_rate < 1.0)) {
    throw ConfigError("synthetic positive_rate must lie in (0, 1)");
  }
  if (engagement_effect < 0.0) throw ConfigError("synthetic engagement_effect must be >= 0");
  if (score_effect < 0.0) throw ConfigError("synthetic score_effect must be >= 0");
  for (std::int32_t due : assessment_due_days) {
    if (due < 0 || due > course_length_days) {
      throw ConfigError("assessment due day " + std::to_string(due) +
                        " outside [0, course_length_days]");
    }
  }
}

RawTables generate_synthetic(const SynthConfig& config) {
  config.validate();
  RawTables tables;
  const std::int16_t run = tables.runs.intern("SYN", "2014J");

  for (std::int32_t s = 0; s < kNumSites; ++s) {
    tables.vle.push_back(VleRow{kFirstSiteId + s,
                                kActivityTypes[static_cast<std::size_t>(s) % kNumActivityTypes]});
  }
  for (std::size_t k = 0; k < config.assessment_due_days.size(); ++k) {
    tables.assessments.push_back(AssessmentRow{kFirstAssessmentId + static_cast<std::int32_t>(k),
                                               run, true, config.assessment_due_days[k]});
  }

  const double events_per_course = 60.0;
  const std::int32_t day_span = config.course_length_days + kPreCourseDays + 1;

  for (std::size_t i = 0; i < config.n_instances; ++i) {
    // Independent substream per instance: draws for one instance never shift
    // another's, so per-instance content is stable under config-size changes.
    Rng rng(Rng::derive(config.seed, 1000 + i));
    const std::int32_t student = kFirstStudentId + static_cast<std::int32_t>(i);
    const bool positive = rng.bernoulli(config.positive_rate);

    std::string final_result;
    if (positive) {
      final_result = (i % 7 == 0) ? "Distinction" : "Pass";
    } else {
      final_result = (i % 5 == 0) ? "Withdrawn" : "Fail";
    }
    tables.student_info.push_back(StudentInfoRow{run, student, final_result});

    const double class_shift = config.engagement_effect * (positive ? 0.5 : -0.5);
    const double intensity = std::max(0.05, std::exp(0.35 * rng.normal()) * (1.0 + class_shift));

    const std::uint64_t n_events = rng.poisson(events_per_course * intensity);
    for (std::uint64_t e = 0; e < n_events; ++e) {
      const std::int32_t day =
          -kPreCourseDays + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(day_span)));
      const std::int32_t site =
          kFirstSiteId + static_cast<std::int32_t>(rng.below(kNumSites));
      const std::int32_t clicks = 1 + static_cast<std::int32_t>(rng.poisson(1.3));
      tables.student_vle.push_back(StudentVleRow{run, student, site, day, clicks});
    }

    const double p_submit = 1.0 - std::exp(-1.1 * intensity);
    const double score_shift = config.score_effect * (positive ? 1.0 : -1.0);
    for (std::size_t k = 0; k < config.assessment_due_days.size(); ++k) {
      if (!rng.bernoulli(p_submit)) continue;
      StudentAssessmentRow row;
      row.assessment = kFirstAssessmentId + static_cast<std::int32_t>(k);
      row.student = student;
      const std::int32_t delta = -4 + static_cast<std::int32_t>(rng.below(8));  // [-4, 3]
      if (rng.bernoulli(0.02)) {
        row.has_day = false;  // banked/transferred result, no submission date
        ++tables.ingest.undated_submissions;
      } else {
        row.has_day = true;
        row.day_submitted = config.assessment_due_days[k] + delta;
      }
      if (rng.bernoulli(0.03)) {
        row.has_score = false;
        ++tables.ingest.unscored_submissions;
      } else {
        row.has_score = true;
        row.score = std::clamp(round1(58.0 + score_shift + 14.0 * rng.normal()), 0.0, 100.0);
      }
      tables.student_assessment.push_back(row);
    }
  }

  tables.ingest.student_info_rows = tables.student_info.size();
  tables.ingest.student_vle_rows = tables.student_vle.size();
  tables.ingest.vle_rows = tables.vle.size();
  tables.ingest.assessment_rows = tables.assessments.size();
  tables.ingest.student_assessment_rows = tables.student_assessment.size();
  return tables;
}

}  // namespace leap
