#include "leap/reports.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "leap/csv.hpp"
#include "leap/error.hpp"
#include "leap/sha256.hpp"
#include "leap/temporal.hpp"

namespace leap {
namespace {

std::string format_double(double value, const char* fmt) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

// Shortest decimal form that parses back to the exact same double, so a
// results file can be re-aggregated without losing precision.
std::string metric_text(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// One results row without the wall-time column; shared by the CSV writer and
// the canonical hash so the two can never drift apart.
std::vector<std::string> results_row_canonical(const RunResult& r) {
  return {
      std::string(policy_name(LeakagePolicy{r.policy})),
      std::to_string(r.cutoff),
      std::string(model_spec(r.model).name),
      std::to_string(r.seed),
      metric_text(r.metrics.roc_auc),
      metric_text(r.metrics.pr_auc),
      metric_text(r.metrics.brier),
      metric_text(r.metrics.f1_at_half),
  };
}

}  // namespace

void write_results_csv(const std::vector<RunResult>& results, const std::filesystem::path& path) {
  CsvWriter writer(path);
  writer.write_row({"policy", "cutoff", "model", "seed", "roc_auc", "pr_auc", "brier",
                    "f1_at_half", "wall_seconds"});
  for (const RunResult& r : results) {
    std::vector<std::string> row = results_row_canonical(r);
    row.push_back(format_double(r.wall_seconds, "%.3f"));
    writer.write_row(row);
  }
}

std::vector<RunResult> read_results_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  const std::size_t c_policy = reader.column("policy");
  const std::size_t c_cutoff = reader.column("cutoff");
  const std::size_t c_model = reader.column("model");
  const std::size_t c_seed = reader.column("seed");
  const std::size_t c_auc = reader.column("roc_auc");
  const std::size_t c_ap = reader.column("pr_auc");
  const std::size_t c_brier = reader.column("brier");
  const std::size_t c_f1 = reader.column("f1_at_half");
  const std::size_t c_wall = reader.column("wall_seconds");

  std::vector<RunResult> out;
  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    RunResult r;
    r.policy = parse_policy(fields[c_policy]).mode;
    r.cutoff = parse_int_field(reader, fields[c_cutoff], "cutoff");
    r.model = parse_model_name(fields[c_model]).kind;
    const std::int32_t seed = parse_int_field(reader, fields[c_seed], "seed");
    if (seed < 0) {
      throw DataError(path.string() + ":" + std::to_string(reader.line_number()) +
                      ": negative seed");
    }
    r.seed = static_cast<std::uint64_t>(seed);
    r.metrics.roc_auc = parse_real_field(reader, fields[c_auc], "roc_auc");
    r.metrics.pr_auc = parse_real_field(reader, fields[c_ap], "pr_auc");
    r.metrics.brier = parse_real_field(reader, fields[c_brier], "brier");
    r.metrics.f1_at_half = parse_real_field(reader, fields[c_f1], "f1_at_half");
    r.wall_seconds = parse_real_field(reader, fields[c_wall], "wall_seconds");
    out.push_back(r);
  }
  return out;
}

void write_aggregate_csv(const std::vector<AggregateResult>& aggregates,
                         const std::filesystem::path& path) {
  CsvWriter writer(path);
  writer.write_row({"policy", "cutoff", "model", "metric", "metric_mean", "metric_std"});
  for (const AggregateResult& agg : aggregates) {
    for (std::size_t metric = 0; metric < kNumMetrics; ++metric) {
      writer.write_row({
          std::string(policy_name(LeakagePolicy{agg.policy})),
          std::to_string(agg.cutoff),
          std::string(model_spec(agg.model).name),
          std::string(kMetricNames[metric]),
          metric_text(metric_value(agg.mean, metric)),
          metric_text(metric_value(agg.std_dev, metric)),
      });
    }
  }
}

void write_importance_csv(const std::vector<ImportanceReport>& reports,
                          const std::filesystem::path& path) {
  CsvWriter writer(path);
  writer.write_row({"policy", "cutoff", "model", "rank", "feature", "weight"});
  for (const ImportanceReport& report : reports) {
    for (std::size_t i = 0; i < report.ranked.size(); ++i) {
      writer.write_row({
          "strict",
          std::to_string(report.cutoff),
          report.model,
          std::to_string(i + 1),
          report.ranked[i].feature,
          metric_text(report.ranked[i].weight),
      });
    }
  }
}

void write_ablation_csv(const std::vector<AblationCell>& cells,
                        const std::filesystem::path& path) {
  CsvWriter writer(path);
  writer.write_row({"cutoff", "model", "strict_roc_auc", "leaky_assessment_roc_auc",
                    "leaky_all_roc_auc", "delta_assessment", "delta_all"});
  for (const AblationCell& cell : cells) {
    writer.write_row({
        std::to_string(cell.cutoff),
        std::string(model_spec(cell.model).name),
        metric_text(cell.strict_roc_auc),
        metric_text(cell.leaky_assessment_roc_auc),
        metric_text(cell.leaky_all_roc_auc),
        metric_text(cell.delta_assessment()),
        metric_text(cell.delta_all()),
    });
  }
}

std::string canonical_results_hash(const std::vector<RunResult>& results) {
  std::string content = "policy,cutoff,model,seed,roc_auc,pr_auc,brier,f1_at_half\n";
  for (const RunResult& r : results) {
    const std::vector<std::string> row = results_row_canonical(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) content += ',';
      content += row[i];
    }
    content += '\n';
  }
  return sha256_hex(content);
}

void write_manifest(const std::map<std::string, std::string>& config,
                    const std::vector<ManifestFile>& files, const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  doc["format"] = "leap-manifest";
  doc["version"] = 1;
  nlohmann::ordered_json config_json = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) config_json[key] = value;  // std::map: sorted keys
  doc["config"] = std::move(config_json);
  doc["files"] = nlohmann::ordered_json::array();
  for (const ManifestFile& file : files) {
    nlohmann::ordered_json entry;
    entry["name"] = file.name;
    entry["sha256"] = file.sha256;
    if (!file.canonical_sha256.empty()) entry["canonical_sha256"] = file.canonical_sha256;
    entry["rows"] = file.rows;
    doc["files"].push_back(std::move(entry));
  }
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw DataError("cannot open " + path.string() + " for writing");
  stream << doc.dump(2) << '\n';
  if (!stream) throw DataError("failed writing " + path.string());
}

}  // namespace leap
