#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "leap/evaluation.hpp"
#include "leap/model.hpp"

namespace leap {

// Per-cell results.  Columns: policy, cutoff, model, seed, the four metrics
// (6 decimals), wall_seconds (3 decimals).  Row order follows the input.
void write_results_csv(const std::vector<RunResult>& results, const std::filesystem::path& path);
std::vector<RunResult> read_results_csv(const std::filesystem::path& path);

// Long format: policy, cutoff, model, metric, metric_mean, metric_std with
// one row per metric per aggregated cell.
void write_aggregate_csv(const std::vector<AggregateResult>& aggregates,
                         const std::filesystem::path& path);

// Ranked importances: policy, cutoff, model, rank (1-based), feature, weight.
// The profile runs under the strict policy only.
void write_importance_csv(const std::vector<ImportanceReport>& reports,
                          const std::filesystem::path& path);

// Wide three-policy comparison of mean ROC-AUC per (cutoff, model) with the
// leaky-minus-strict delta columns.
void write_ablation_csv(const std::vector<AblationCell>& cells, const std::filesystem::path& path);

// Hash of the benchmark content with wall times excluded.  Rerunning an
// identical configuration reproduces this hash exactly even though per-cell
// timings differ between runs.
std::string canonical_results_hash(const std::vector<RunResult>& results);

struct ManifestFile {
  std::string name;
  std::string sha256;
  std::string canonical_sha256;  // empty when the raw bytes are already canonical
  std::size_t rows = 0;
};

// Machine-readable run record: the resolved configuration plus per-file
// hashes.  Keys are emitted in sorted order so identical runs produce
// identical manifests.
void write_manifest(const std::map<std::string, std::string>& config,
                    const std::vector<ManifestFile>& files, const std::filesystem::path& path);

}  // namespace leap
