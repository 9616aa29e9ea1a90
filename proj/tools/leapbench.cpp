// leapbench: leakage-controlled benchmarking of early end-of-course outcome
// prediction from LMS activity logs.
//
// Subcommands:
//   validate  load a dataset and print row, instance, and label counts
//   run       execute the benchmark grid and write results + manifest
//   ablate    compare the strict policy against the two leaky diagnostics
//   synth     generate the five-file synthetic dataset
//   report    re-aggregate an existing results CSV

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "leap/dataset.hpp"
#include "leap/error.hpp"
#include "leap/evaluation.hpp"
#include "leap/features.hpp"
#include "leap/model.hpp"
#include "leap/provenance.hpp"
#include "leap/reports.hpp"
#include "leap/sha256.hpp"
#include "leap/synthetic.hpp"
#include "leap/temporal.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string config_path;
  std::string data_root;
  std::string out_dir = "out";
  std::string policy = "strict";
  std::string cutoffs = "7,14,21,28,35,42,49,56";
  std::string models;  // empty: command default (full zoo, or RF,GBDT for ablate)
  std::string seeds = "0,1,2,3,4";
  unsigned jobs = 1;
  bool importance = false;
  std::vector<std::string> inject_specs;
  std::string results_path;   // report input
  std::string due_days_text;  // synth --due-days override
  leap::SynthConfig synth;
};

// ---------------------------------------------------------------------------
// Small parsers (all failures are configuration errors, exit code 2).

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

long long parse_integer(const std::string& text, const std::string& what) {
  long long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw leap::ConfigError("invalid integer for " + what + ": '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw leap::ConfigError("invalid number for " + what + ": '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text, const std::string& what) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    const std::string item = trim(std::string_view(text).substr(pos, end - pos));
    if (item.empty()) throw leap::ConfigError("empty entry in " + what + " list: '" + text + "'");
    out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw leap::ConfigError(what + " list is empty");
  return out;
}

std::vector<std::int32_t> parse_cutoffs(const std::string& text) {
  std::vector<std::int32_t> out;
  for (const std::string& item : split_list(text, "cutoff")) {
    const long long value = parse_integer(item, "cutoff");
    if (value <= 0) throw leap::ConfigError("cutoffs must be positive, got " + item);
    if (!out.empty() && value <= out.back()) {
      throw leap::ConfigError("cutoffs must be strictly increasing, got " + text);
    }
    out.push_back(static_cast<std::int32_t>(value));
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(text, "seed")) {
    const long long value = parse_integer(item, "seed");
    if (value < 0) throw leap::ConfigError("seeds must be non-negative, got " + item);
    const auto seed = static_cast<std::uint64_t>(value);
    if (std::find(out.begin(), out.end(), seed) != out.end()) {
      throw leap::ConfigError("duplicate seed " + item);
    }
    out.push_back(seed);
  }
  return out;
}

std::vector<leap::ModelSpec> parse_models(const std::string& text) {
  std::vector<leap::ModelSpec> out;
  for (const std::string& item : split_list(text, "model")) {
    const leap::ModelSpec spec = leap::parse_model_name(item);
    for (const leap::ModelSpec& seen : out) {
      if (seen.kind == spec.kind) throw leap::ConfigError("duplicate model " + item);
    }
    out.push_back(spec);
  }
  return out;
}

std::vector<std::int32_t> parse_day_list(const std::string& text, const std::string& what) {
  std::vector<std::int32_t> out;
  for (const std::string& item : split_list(text, what)) {
    out.push_back(static_cast<std::int32_t>(parse_integer(item, what)));
  }
  return out;
}

leap::LeakInjection parse_injection(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw leap::ConfigError("--inject-leak expects kind:slot:day, got '" + text + "'");
  }
  const std::string kind = trim(std::string_view(text).substr(0, first));
  const std::string slot = trim(std::string_view(text).substr(first + 1, second - first - 1));
  const std::string day = trim(std::string_view(text).substr(second + 1));
  leap::LeakInjection injection;
  if (kind == "interaction") {
    injection.kind = leap::SourceKind::interaction;
  } else if (kind == "submission") {
    injection.kind = leap::SourceKind::assessment_submission;
  } else {
    throw leap::ConfigError("--inject-leak kind must be interaction or submission, got '" + kind +
                            "'");
  }
  const long long slot_value = parse_integer(slot, "--inject-leak slot");
  if (slot_value < 0) throw leap::ConfigError("--inject-leak slot must be non-negative");
  injection.instance_slot = static_cast<std::size_t>(slot_value);
  injection.day = static_cast<std::int32_t>(parse_integer(day, "--inject-leak day"));
  return injection;
}

// ---------------------------------------------------------------------------
// Flat key=value configuration file.  '#' lines are comments; command-line
// flags override file values; unknown keys are rejected.

std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw leap::ConfigError("cannot open config file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw leap::ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) {
      throw leap::ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!out.emplace(key, value).second) {
      throw leap::ConfigError(path.string() + ":" + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
    }
  }
  return out;
}

bool apply_config_key(Options& opt, const std::string& key, const std::string& value) {
  if (key == "data_root") { opt.data_root = value; return true; }
  if (key == "out") { opt.out_dir = value; return true; }
  if (key == "policy") { opt.policy = value; return true; }
  if (key == "cutoffs") { opt.cutoffs = value; return true; }
  if (key == "models") { opt.models = value; return true; }
  if (key == "seeds") { opt.seeds = value; return true; }
  if (key == "jobs") {
    const long long jobs = parse_integer(value, "jobs");
    if (jobs < 1) throw leap::ConfigError("jobs must be at least 1");
    opt.jobs = static_cast<unsigned>(jobs);
    return true;
  }
  if (key == "synth.n_instances") {
    const long long n = parse_integer(value, key);
    if (n < 1) throw leap::ConfigError("synth.n_instances must be at least 1");
    opt.synth.n_instances = static_cast<std::size_t>(n);
    return true;
  }
  if (key == "synth.course_length_days") {
    opt.synth.course_length_days = static_cast<std::int32_t>(parse_integer(value, key));
    return true;
  }
  if (key == "synth.positive_rate") { opt.synth.positive_rate = parse_real(value, key); return true; }
  if (key == "synth.engagement_effect") {
    opt.synth.engagement_effect = parse_real(value, key);
    return true;
  }
  if (key == "synth.score_effect") { opt.synth.score_effect = parse_real(value, key); return true; }
  if (key == "synth.seed") {
    const long long seed = parse_integer(value, key);
    if (seed < 0) throw leap::ConfigError("synth.seed must be non-negative");
    opt.synth.seed = static_cast<std::uint64_t>(seed);
    return true;
  }
  if (key == "synth.due_days") {
    opt.synth.assessment_due_days = parse_day_list(value, key);
    return true;
  }
  return false;
}

const char* flag_for_key(const std::string& key) {
  if (key == "data_root") return "--data-root";
  if (key == "out") return "--out";
  if (key == "policy") return "--policy";
  if (key == "cutoffs") return "--cutoffs";
  if (key == "models") return "--models";
  if (key == "seeds") return "--seeds";
  if (key == "jobs") return "--jobs";
  if (key == "synth.n_instances") return "--n-instances";
  if (key == "synth.course_length_days") return "--course-length";
  if (key == "synth.positive_rate") return "--positive-rate";
  if (key == "synth.engagement_effect") return "--engagement-effect";
  if (key == "synth.score_effect") return "--score-effect";
  if (key == "synth.seed") return "--seed";
  if (key == "synth.due_days") return "--due-days";
  return nullptr;
}

void apply_config_file(Options& opt, const CLI::App* cmd) {
  if (opt.config_path.empty()) return;
  for (const auto& [key, value] : read_config_file(opt.config_path)) {
    if (const char* flag = flag_for_key(key)) {
      const CLI::Option* option = cmd->get_option_no_throw(flag);
      if (option != nullptr && option->count() > 0) continue;  // command line wins
    }
    if (!apply_config_key(opt, key, value)) {
      throw leap::ConfigError("unknown configuration key '" + key + "' in " + opt.config_path);
    }
  }
}

// ---------------------------------------------------------------------------
// Input resolution: a CSV directory when given, the synthetic generator
// otherwise.

struct InputData {
  leap::RawTables tables;
  std::string source;
  bool synthetic = false;
};

InputData load_input(const Options& opt) {
  if (!opt.data_root.empty()) {
    return {leap::load_tables(opt.data_root), opt.data_root, false};
  }
  opt.synth.validate();
  return {leap::generate_synthetic(opt.synth),
          "synthetic (n=" + std::to_string(opt.synth.n_instances) +
              ", seed=" + std::to_string(opt.synth.seed) + ")",
          true};
}

std::string join_days(const std::vector<std::int32_t>& days) {
  std::string out;
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(days[i]);
  }
  return out;
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

std::map<std::string, std::string> config_echo(const Options& opt, const std::string& command,
                                               const std::vector<leap::ModelSpec>& specs,
                                               const std::vector<std::int32_t>& cutoffs,
                                               const std::vector<std::uint64_t>& seeds) {
  std::map<std::string, std::string> echo;
  echo["command"] = command;
  echo["version"] = kVersion;
  echo["policy"] = std::string(leap::policy_name(leap::parse_policy(opt.policy)));
  echo["cutoffs"] = join_days(cutoffs);
  std::string model_names;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i > 0) model_names += ',';
    model_names += std::string(specs[i].name);
  }
  echo["models"] = model_names;
  std::string seed_text;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) seed_text += ',';
    seed_text += std::to_string(seeds[i]);
  }
  echo["seeds"] = seed_text;
  echo["jobs"] = std::to_string(opt.jobs);
  if (!opt.data_root.empty()) {
    echo["data_root"] = opt.data_root;
  } else {
    echo["synth.n_instances"] = std::to_string(opt.synth.n_instances);
    echo["synth.course_length_days"] = std::to_string(opt.synth.course_length_days);
    echo["synth.positive_rate"] = format_real(opt.synth.positive_rate);
    echo["synth.engagement_effect"] = format_real(opt.synth.engagement_effect);
    echo["synth.score_effect"] = format_real(opt.synth.score_effect);
    echo["synth.seed"] = std::to_string(opt.synth.seed);
    echo["synth.due_days"] = join_days(opt.synth.assessment_due_days);
  }
  if (!opt.inject_specs.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < opt.inject_specs.size(); ++i) {
      if (i > 0) joined += ';';
      joined += opt.inject_specs[i];
    }
    echo["inject_leak"] = joined;
  }
  return echo;
}

void remove_if_exists(const fs::path& path) {
  std::error_code ec;
  fs::remove(path, ec);
}

// A strict halt must not leave result files behind; the audit log records
// what was detected instead.
void handle_violation(const leap::ProtocolViolation& e, const fs::path& out_dir,
                      const std::vector<fs::path>& outputs, leap::LeakagePolicy policy) {
  for (const fs::path& path : outputs) remove_if_exists(path);
  leap::AuditReport halted;
  halted.cutoff = e.cutoff();
  halted.policy = policy;
  halted.violations = e.violations();
  halted.verdict = leap::AuditVerdict::fail;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!ec) leap::write_audit_jsonl(halted, out_dir / "audit.jsonl");
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_validate(const Options& opt) {
  const InputData in = load_input(opt);
  const leap::Cohort cohort = leap::build_cohort(in.tables);
  const leap::IngestReport& ingest = in.tables.ingest;
  const leap::CohortSummary& summary = cohort.summary;

  std::printf("source: %s\n", in.source.c_str());
  std::printf("rows:\n");
  std::printf("  %-21s %10zu\n", "studentInfo.csv", ingest.student_info_rows);
  std::printf("  %-21s %10zu\n", "studentVle.csv", ingest.student_vle_rows);
  std::printf("  %-21s %10zu\n", "vle.csv", ingest.vle_rows);
  std::printf("  %-21s %10zu\n", "assessments.csv", ingest.assessment_rows);
  std::printf("  %-21s %10zu\n", "studentAssessment.csv", ingest.student_assessment_rows);
  std::printf("ingest notes:\n");
  std::printf("  unresolved site refs: %zu\n", ingest.unresolved_site_refs);
  std::printf("  undated submissions (excluded): %zu\n", ingest.undated_submissions);
  std::printf("  unscored submissions: %zu\n", ingest.unscored_submissions);
  std::printf("  undated assessments: %zu\n", ingest.undated_assessments);
  std::printf("cohort:\n");
  std::printf("  instances: %zu\n", summary.n_instances);
  std::printf("  course runs: %zu\n", summary.n_runs);
  std::printf("  positives: %zu (%.1f%%)\n", summary.positives, 100.0 * summary.positive_fraction);
  std::printf("  interaction records: %zu\n", summary.interaction_records);
  std::printf("  submission records: %zu\n", summary.submission_records);
  std::printf("  dropped interaction rows: %zu\n", summary.dropped_vle_rows);
  std::printf("  dropped submission rows: %zu\n", summary.dropped_submission_rows);
  std::printf("  duplicate submissions: %zu\n", summary.duplicate_submissions);
  return 0;
}

int cmd_run(const Options& opt) {
  const leap::LeakagePolicy policy = leap::parse_policy(opt.policy);
  const std::vector<std::int32_t> cutoffs = parse_cutoffs(opt.cutoffs);
  const std::vector<leap::ModelSpec> specs =
      opt.models.empty() ? leap::model_zoo() : parse_models(opt.models);
  const std::vector<std::uint64_t> seeds = parse_seeds(opt.seeds);
  std::vector<leap::LeakInjection> injections;
  for (const std::string& spec : opt.inject_specs) injections.push_back(parse_injection(spec));
  if (opt.importance && policy.mode != leap::PolicyMode::strict) {
    throw leap::ConfigError("--importance runs under the strict policy only");
  }

  const InputData in = load_input(opt);
  const leap::Cohort cohort = leap::build_cohort(in.tables);

  const fs::path out_dir = opt.out_dir;
  const fs::path results_path = out_dir / "results.csv";
  const fs::path aggregate_path = out_dir / "aggregate.csv";
  const fs::path audit_path = out_dir / "audit.jsonl";
  const fs::path manifest_path = out_dir / "manifest.json";
  const fs::path importance_path = out_dir / "importance.csv";

  try {
    const leap::BenchmarkOutput bench = leap::run_benchmark(
        cohort, in.tables, cutoffs, specs, seeds, policy, opt.jobs, injections);
    const std::vector<leap::AggregateResult> aggregates = leap::aggregate(bench.results);
    std::vector<leap::ImportanceReport> importance;
    if (opt.importance) {
      std::vector<leap::ModelSpec> profiled = {
          leap::model_spec(leap::ModelKind::logistic_regression),
          leap::model_spec(leap::ModelKind::random_forest),
          leap::model_spec(leap::ModelKind::gbdt),
      };
      importance = leap::importance_profile(cohort, in.tables, cutoffs, profiled, seeds.front());
    }

    fs::create_directories(out_dir);
    leap::write_results_csv(bench.results, results_path);
    leap::write_aggregate_csv(aggregates, aggregate_path);
    leap::write_audit_jsonl(bench.audits, audit_path);
    if (opt.importance) leap::write_importance_csv(importance, importance_path);

    std::vector<leap::ManifestFile> files;
    files.push_back({"results.csv", leap::sha256_file_hex(results_path),
                     leap::canonical_results_hash(bench.results), bench.results.size()});
    files.push_back({"aggregate.csv", leap::sha256_file_hex(aggregate_path), "",
                     aggregates.size() * leap::kNumMetrics});
    files.push_back({"audit.jsonl", leap::sha256_file_hex(audit_path), "", bench.audits.size()});
    if (opt.importance) {
      files.push_back({"importance.csv", leap::sha256_file_hex(importance_path), "",
                       importance.size() * leap::kNumFeatures});
    }
    leap::write_manifest(config_echo(opt, "run", specs, cutoffs, seeds), files, manifest_path);

    std::printf("source: %s\n", in.source.c_str());
    std::printf("instances: %zu  positives: %.1f%%\n", cohort.size(),
                100.0 * cohort.summary.positive_fraction);
    std::printf("grid: %zu cutoffs x %zu models x %zu seeds = %zu cells (policy %s)\n",
                cutoffs.size(), specs.size(), seeds.size(), bench.results.size(),
                std::string(leap::policy_name(policy)).c_str());
    std::printf("best mean ROC-AUC per cutoff:\n");
    for (const std::int32_t cutoff : cutoffs) {
      const leap::AggregateResult* best = nullptr;
      for (const leap::AggregateResult& agg : aggregates) {
        if (agg.cutoff != cutoff) continue;
        if (best == nullptr || agg.mean.roc_auc > best->mean.roc_auc) best = &agg;
      }
      if (best != nullptr) {
        std::printf("  t=%-3d %-10s %.4f (+/- %.4f)\n", cutoff,
                    std::string(leap::model_spec(best->model).name).c_str(), best->mean.roc_auc,
                    best->std_dev.roc_auc);
      }
    }
    std::printf("wrote %s, %s, %s%s, %s\n", results_path.string().c_str(),
                aggregate_path.string().c_str(), audit_path.string().c_str(),
                opt.importance ? (", " + importance_path.string()).c_str() : "",
                manifest_path.string().c_str());
    return 0;
  } catch (const leap::ProtocolViolation& e) {
    handle_violation(e, out_dir, {results_path, aggregate_path, manifest_path, importance_path},
                     policy);
    throw;
  }
}

int cmd_ablate(const Options& opt) {
  const std::vector<std::int32_t> cutoffs = parse_cutoffs(opt.cutoffs);
  const std::vector<leap::ModelSpec> specs =
      opt.models.empty() ? parse_models("RF,GBDT") : parse_models(opt.models);
  const std::vector<std::uint64_t> seeds = parse_seeds(opt.seeds);

  const InputData in = load_input(opt);
  const leap::Cohort cohort = leap::build_cohort(in.tables);

  const fs::path out_dir = opt.out_dir;
  const fs::path results_path = out_dir / "results.csv";
  const fs::path aggregate_path = out_dir / "aggregate.csv";
  const fs::path ablation_path = out_dir / "ablation.csv";
  const fs::path audit_path = out_dir / "audit.jsonl";
  const fs::path manifest_path = out_dir / "manifest.json";

  try {
    const leap::AblationOutput out =
        leap::ablation(cohort, in.tables, cutoffs, specs, seeds, opt.jobs);

    fs::create_directories(out_dir);
    leap::write_results_csv(out.results, results_path);
    leap::write_aggregate_csv(out.aggregates, aggregate_path);
    leap::write_ablation_csv(out.cells, ablation_path);
    leap::write_audit_jsonl(out.audits, audit_path);

    std::vector<leap::ManifestFile> files;
    files.push_back({"results.csv", leap::sha256_file_hex(results_path),
                     leap::canonical_results_hash(out.results), out.results.size()});
    files.push_back({"aggregate.csv", leap::sha256_file_hex(aggregate_path), "",
                     out.aggregates.size() * leap::kNumMetrics});
    files.push_back({"ablation.csv", leap::sha256_file_hex(ablation_path), "", out.cells.size()});
    files.push_back({"audit.jsonl", leap::sha256_file_hex(audit_path), "", out.audits.size()});
    leap::write_manifest(config_echo(opt, "ablate", specs, cutoffs, seeds), files, manifest_path);

    std::printf("source: %s\n", in.source.c_str());
    std::printf("ablation over %zu cutoffs x %zu models x %zu seeds (mean ROC-AUC):\n",
                cutoffs.size(), specs.size(), seeds.size());
    for (const leap::AblationCell& cell : out.cells) {
      std::printf("  t=%-3d %-10s strict %.4f  leaky-assessment %.4f  leaky-all %.4f\n",
                  cell.cutoff, std::string(leap::model_spec(cell.model).name).c_str(),
                  cell.strict_roc_auc, cell.leaky_assessment_roc_auc, cell.leaky_all_roc_auc);
    }
    std::printf("wrote %s, %s, %s, %s, %s\n", results_path.string().c_str(),
                aggregate_path.string().c_str(), ablation_path.string().c_str(),
                audit_path.string().c_str(), manifest_path.string().c_str());
    return 0;
  } catch (const leap::ProtocolViolation& e) {
    handle_violation(e, out_dir, {results_path, aggregate_path, ablation_path, manifest_path},
                     leap::LeakagePolicy{});
    throw;
  }
}

int cmd_synth(const Options& opt) {
  opt.synth.validate();
  const leap::RawTables tables = leap::generate_synthetic(opt.synth);
  fs::create_directories(opt.out_dir);
  leap::write_tables(tables, opt.out_dir);
  const std::vector<std::pair<std::string_view, std::size_t>> files = {
      {leap::kStudentInfoFile, tables.student_info.size()},
      {leap::kStudentVleFile, tables.student_vle.size()},
      {leap::kVleFile, tables.vle.size()},
      {leap::kAssessmentsFile, tables.assessments.size()},
      {leap::kStudentAssessmentFile, tables.student_assessment.size()},
  };
  for (const auto& [name, rows] : files) {
    const fs::path path = fs::path(opt.out_dir) / name;
    std::printf("wrote %s  rows=%zu  sha256=%s\n", path.string().c_str(), rows,
                leap::sha256_file_hex(path).c_str());
  }
  return 0;
}

int cmd_report(const Options& opt) {
  const std::vector<leap::RunResult> results = leap::read_results_csv(opt.results_path);
  const std::vector<leap::AggregateResult> aggregates = leap::aggregate(results);
  fs::create_directories(opt.out_dir);
  const fs::path aggregate_path = fs::path(opt.out_dir) / "aggregate.csv";
  leap::write_aggregate_csv(aggregates, aggregate_path);
  std::printf("read %zu results from %s\n", results.size(), opt.results_path.c_str());
  std::printf("canonical sha256: %s\n", leap::canonical_results_hash(results).c_str());
  std::printf("wrote %s\n", aggregate_path.string().c_str());
  return 0;
}

void add_io_options(CLI::App* cmd, Options& opt, bool with_out) {
  cmd->add_option("--config", opt.config_path, "flat key=value configuration file");
  cmd->add_option("--data-root", opt.data_root,
                  "directory with the five OULAD-schema CSV files (omit to use the synthetic "
                  "generator)");
  if (with_out) cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
}

void add_grid_options(CLI::App* cmd, Options& opt, bool with_policy) {
  if (with_policy) {
    cmd->add_option("--policy", opt.policy,
                    "availability policy: strict, leaky-assessment (submissions untruncated), or "
                    "leaky-all (nothing truncated)");
  }
  cmd->add_option("--cutoffs", opt.cutoffs, "comma-separated day cutoffs (default 7..56 weekly)");
  cmd->add_option("--models", opt.models, "comma-separated model names");
  cmd->add_option("--seeds", opt.seeds, "comma-separated split/training seeds");
  cmd->add_option("--jobs", opt.jobs, "worker threads for benchmark cells (default 1)");
  cmd->add_option("--inject-leak", opt.inject_specs,
                  "diagnostic: plant a post-cutoff record, format kind:slot:day with kind "
                  "interaction or submission (repeatable)");
}

void add_synth_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--n-instances", opt.synth.n_instances, "number of generated learners");
  cmd->add_option("--course-length", opt.synth.course_length_days, "course length in days");
  cmd->add_option("--positive-rate", opt.synth.positive_rate, "fraction of positive outcomes");
  cmd->add_option("--engagement-effect", opt.synth.engagement_effect,
                  "relative click-intensity gap between outcome classes");
  cmd->add_option("--score-effect", opt.synth.score_effect,
                  "score-mean gap in points between outcome classes");
  cmd->add_option("--seed", opt.synth.seed, "generator seed");
  cmd->add_option("--due-days", opt.due_days_text, "comma-separated assessment due days");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leakage-controlled benchmarking of early end-of-course outcome prediction"};
  app.require_subcommand(1);

  Options opt;

  CLI::App* validate = app.add_subcommand(
      "validate", "Load the dataset and print row, instance, and label counts");
  add_io_options(validate, opt, false);

  CLI::App* run = app.add_subcommand(
      "run", "Execute the benchmark grid and write results, aggregates, audit log, and manifest");
  add_io_options(run, opt, true);
  add_grid_options(run, opt, true);
  add_synth_options(run, opt);
  run->add_flag("--importance", opt.importance,
                "also rank feature importances per cutoff (strict policy only)");

  CLI::App* ablate = app.add_subcommand(
      "ablate", "Compare the strict policy against leaky-assessment and leaky-all");
  add_io_options(ablate, opt, true);
  add_grid_options(ablate, opt, false);
  add_synth_options(ablate, opt);

  CLI::App* synth =
      app.add_subcommand("synth", "Generate the five-file synthetic dataset");
  synth->add_option("--config", opt.config_path, "flat key=value configuration file");
  synth->add_option("--out", opt.out_dir, "output directory (default: out)");
  add_synth_options(synth, opt);

  CLI::App* report = app.add_subcommand("report", "Re-aggregate an existing results CSV");
  report->add_option("--results", opt.results_path, "results CSV produced by run or ablate")
      ->required();
  report->add_option("--out", opt.out_dir, "output directory (default: out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(leap::ExitCode::config_error);
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config_file(opt, active);
    if (!opt.due_days_text.empty()) {
      opt.synth.assessment_due_days = parse_day_list(opt.due_days_text, "--due-days");
    }
    if (active == validate) return cmd_validate(opt);
    if (active == run) return cmd_run(opt);
    if (active == ablate) return cmd_ablate(opt);
    if (active == synth) return cmd_synth(opt);
    if (active == report) return cmd_report(opt);
    return static_cast<int>(leap::ExitCode::config_error);
  } catch (const leap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return static_cast<int>(leap::ExitCode::failure);
  }
}
