#pragma once

#include <cstdint>
#include <vector>

#include "leap/dataset.hpp"

namespace leap {

// Parameters for OULAD-shaped synthetic data.  Outcome signal enters only
// through the two effect sizes; with both at zero the generated records carry
// no label information and a correct pipeline scores at chance.
struct SynthConfig {
  std::size_t n_instances = 2000;
  std::int32_t course_length_days = 120;
  double positive_rate = 0.5;
  double engagement_effect = 0.5;  // relative click-intensity gap between classes
  std::vector<std::int32_t> assessment_due_days = {14, 33, 52, 75, 100};
  double score_effect = 8.0;  // score-mean gap (points) between classes
  std::uint64_t seed = 7;

  void validate() const;  // throws ConfigError
};

// Deterministic for a given config (bit-identical tables on repeat calls).
RawTables generate_synthetic(const SynthConfig& config);

}  // namespace leap
