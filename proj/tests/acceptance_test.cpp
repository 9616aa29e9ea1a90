// Acceptance suite: one test per acceptance criterion, each printing a single
// verdict line.  Criteria 1-8 run entirely on synthetic data.  Criteria 9-13
// need a real OULAD copy; point LEAP_OULAD_ROOT at the directory holding the
// five CSV files to enable them, otherwise they report SKIP.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "leap/boosting.hpp"
#include "leap/dataset.hpp"
#include "leap/error.hpp"
#include "leap/evaluation.hpp"
#include "leap/features.hpp"
#include "leap/metrics.hpp"
#include "leap/mlp.hpp"
#include "leap/model.hpp"
#include "leap/rng.hpp"
#include "leap/split.hpp"
#include "leap/synthetic.hpp"
#include "leap/temporal.hpp"
#include "test_support.hpp"

namespace leap {
namespace {

namespace fs = std::filesystem;

const std::vector<std::int32_t> kWeeklyCutoffs = {7, 14, 21, 28, 35, 42, 49, 56};

void verdict(int criterion, bool ok, const std::string& detail) {
  std::printf("[ACCEPT] criterion %2d: %s — %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(ok) << "criterion " << criterion << ": " << detail;
}

void skipped(int criterion, const std::string& why) {
  std::printf("[ACCEPT] criterion %2d: SKIP — %s\n", criterion, why.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

std::vector<ModelSpec> specs_for(std::initializer_list<const char*> names) {
  std::vector<ModelSpec> specs;
  for (const char* name : names) specs.push_back(parse_model_name(name));
  return specs;
}

// --------------------------------------------------------------------------
// 1. Guarding post-cutoff records out of the feature computation must be
//    indistinguishable from a world where those records never existed.

TEST(Acceptance, Criterion01LeakageExclusionEquivalence) {
  Rng rng(1001);
  int checked = 0;
  for (int cohort_i = 0; cohort_i < 50; ++cohort_i) {
    SynthConfig config;
    config.n_instances = 40 + rng.below(60);
    config.course_length_days = 105 + static_cast<std::int32_t>(rng.below(30));
    config.positive_rate = 0.3 + 0.4 * rng.uniform();
    config.engagement_effect = rng.uniform();
    config.score_effect = 12.0 * rng.uniform();
    config.seed = 2000 + static_cast<std::uint64_t>(cohort_i);
    const RawTables tables = generate_synthetic(config);

    for (const std::int32_t t : kWeeklyCutoffs) {
      RawTables erased = tables;
      std::erase_if(erased.student_vle, [&](const StudentVleRow& r) { return r.day > t; });
      std::erase_if(erased.student_assessment, [&](const StudentAssessmentRow& r) {
        return r.has_day && r.day_submitted > t;
      });
      const CutoffDataset guarded =
          build_cutoff_dataset(build_cohort(tables), tables, t, LeakagePolicy{});
      const CutoffDataset deleted =
          build_cutoff_dataset(build_cohort(erased), erased, t, LeakagePolicy{});
      if (!(guarded.x == deleted.x && guarded.y == deleted.y)) {
        verdict(1, false,
                "feature mismatch on cohort " + std::to_string(cohort_i) + " cutoff " +
                    std::to_string(t));
        return;
      }
      ++checked;
    }
  }
  verdict(1, true,
          "strict features bitwise equal to physical deletion on 50 cohorts x 8 cutoffs (" +
              std::to_string(checked) + " builds)");
}

// --------------------------------------------------------------------------
// 2. A single planted post-cutoff record in either source kind must halt a
//    strict run, naming the offending instance and feature group.

TEST(Acceptance, Criterion02GuardDetection) {
  SynthConfig config;
  config.n_instances = 80;
  config.seed = 11;
  const RawTables tables = generate_synthetic(config);
  const Cohort cohort = build_cohort(tables);

  int detected = 0, total = 0;
  std::string failure;
  const std::int32_t t = 14;
  for (const SourceKind kind : {SourceKind::interaction, SourceKind::assessment_submission}) {
    for (const std::size_t slot : {std::size_t{0}, cohort.size() / 2, cohort.size() - 1}) {
      for (const std::int32_t day : {t + 1, t + 40}) {
        ++total;
        try {
          build_cutoff_dataset(cohort, tables, t, LeakagePolicy{}, {{kind, slot, day}});
          failure = "no halt for kind=" + std::string(source_kind_name(kind)) +
                    " slot=" + std::to_string(slot) + " day=" + std::to_string(day);
        } catch (const ProtocolViolation& e) {
          const bool named =
              !e.violations().empty() &&
              e.violations()[0].student == cohort.keys[slot].student &&
              e.violations()[0].module == cohort.keys[slot].module &&
              !e.violations()[0].group.empty();
          if (named) {
            ++detected;
          } else {
            failure = "halted but did not name instance/group for slot " + std::to_string(slot);
          }
        }
      }
    }
  }

  // End to end once through the binary: exit code 4 and an audit line on disk.
  test::TempDir dir;
  const fs::path out = dir.path() / "out";
  const std::string command = std::string(LEAPBENCH_PATH) +
                              " run --n-instances 80 --seed 11 --cutoffs 14 --models NB --seeds 0"
                              " --inject-leak interaction:5:60 --out " +
                              out.string() + " > " + (dir.path() / "log.txt").string() + " 2>&1";
  const int status = std::system(command.c_str());
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool cli_ok = exit_code == 4 && fs::exists(out / "audit.jsonl") &&
                !fs::exists(out / "results.csv");
  if (cli_ok) {
    std::ifstream in(out / "audit.jsonl");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string audit = buffer.str();
    cli_ok = audit.find("Interaction") != std::string::npos &&
             audit.find("\"fail\"") != std::string::npos;
  }
  if (!cli_ok) failure = "CLI halt path: exit=" + std::to_string(exit_code);

  verdict(2, detected == total && cli_ok,
          failure.empty() ? std::to_string(detected) + "/" + std::to_string(total) +
                                " planted records detected; CLI halt exits 4 with audit entry"
                          : failure);
}

// --------------------------------------------------------------------------
// 3. Truncation algebra on fuzzed record streams.

TEST(Acceptance, Criterion03TruncationAlgebra) {
  Rng rng(3003);
  int streams = 0;
  for (int round = 0; round < 1000; ++round) {
    InteractionView raw;
    raw.kind = SourceKind::interaction;
    const std::size_t slots = 1 + rng.below(6);
    raw.offsets.push_back(0);
    for (std::size_t s = 0; s < slots; ++s) {
      const std::size_t n = rng.below(25);
      for (std::size_t i = 0; i < n; ++i) {
        raw.records.push_back({static_cast<std::int32_t>(rng.below(100)) - 20,
                               static_cast<std::int32_t>(rng.below(5)),
                               1 + static_cast<std::int32_t>(rng.below(9))});
      }
      raw.offsets.push_back(raw.records.size());
    }
    const std::int32_t t1 = static_cast<std::int32_t>(rng.below(90)) - 15;
    const std::int32_t t2 = t1 - static_cast<std::int32_t>(rng.below(30));

    const InteractionView once = truncate(raw, t1);
    // inclusive boundary: exactly the records with day <= t survive
    std::size_t expected = 0;
    for (const auto& r : raw.records) expected += (r.day <= t1);
    bool ok = once.records.size() == expected;
    for (const auto& r : once.records) ok = ok && r.day <= t1;
    // idempotence
    const InteractionView twice = truncate(once, t1);
    ok = ok && twice.records == once.records && twice.offsets == once.offsets;
    // monotone inclusion: tightening in two steps equals one step
    const InteractionView nested = truncate(once, t2);
    const InteractionView direct = truncate(raw, t2);
    ok = ok && nested.records == direct.records && nested.offsets == direct.offsets;
    ok = ok && once.offsets.size() == raw.offsets.size();
    if (!ok) {
      verdict(3, false, "algebra violated on stream " + std::to_string(round));
      return;
    }
    ++streams;
  }
  verdict(3, true, "inclusive boundary, idempotence, monotone inclusion on " +
                       std::to_string(streams) + " fuzzed streams");
}

// --------------------------------------------------------------------------
// 4. Metrics against brute-force reference implementations.

double reference_auc(const std::vector<std::uint8_t>& y, const std::vector<double>& p) {
  double credit = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j]) continue;
      ++pairs;
      credit += p[i] > p[j] ? 1.0 : (p[i] == p[j] ? 0.5 : 0.0);
    }
  }
  return credit / static_cast<double>(pairs);
}

double reference_ap(const std::vector<std::uint8_t>& y, const std::vector<double>& p) {
  std::vector<std::size_t> order(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  double total = 0.0;
  for (const auto v : y) total += v;
  double ap = 0.0, hits = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (y[order[rank]]) {
      hits += 1.0;
      ap += hits / static_cast<double>(rank + 1) / total;
    }
  }
  return ap;
}

TEST(Acceptance, Criterion04MetricOracles) {
  Rng rng(4004);
  int vectors = 0;
  double worst = 0.0;
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 3 + rng.below(48);
    std::vector<std::uint8_t> y(n);
    std::vector<double> p(n);
    const bool tie_heavy = round % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(rng.below(2));
      p[i] = tie_heavy ? static_cast<double>(rng.below(4)) / 3.0 : rng.uniform();
    }
    y[0] = 1;
    y[1 % n] = 0;

    // direct-formula references for the two scalar metrics
    double brier_ref = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      brier_ref += (static_cast<double>(y[i]) - p[i]) * (static_cast<double>(y[i]) - p[i]);
      const bool predicted = p[i] >= 0.5;
      tp += predicted && y[i];
      fp += predicted && !y[i];
      fn += !predicted && y[i];
    }
    brier_ref /= static_cast<double>(n);
    const double f1_ref =
        tp == 0 ? 0.0
                : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);

    const MetricSet m = compute_metrics(y, p);
    const double errs[] = {std::abs(m.roc_auc - reference_auc(y, p)),
                           std::abs(m.pr_auc - reference_ap(y, p)),
                           std::abs(m.brier - brier_ref), std::abs(m.f1_at_half - f1_ref)};
    for (const double e : errs) worst = std::max(worst, e);
    if (worst > 1e-9) {
      verdict(4, false, "deviation " + std::to_string(worst) + " on vector " +
                            std::to_string(round));
      return;
    }
    ++vectors;
  }
  verdict(4, true, "all four metrics within 1e-9 of brute force on " +
                       std::to_string(vectors) + " vectors (worst " + std::to_string(worst) + ")");
}

// --------------------------------------------------------------------------
// 5. Model sanity: gradients, boosting loss, probability bounds, determinism.

TEST(Acceptance, Criterion05ModelSanity) {
  std::string failure;

  // MLP analytic gradient vs central differences over every parameter.
  {
    constexpr std::size_t d = 5, n = 12;
    Matrix x(n, d);
    std::vector<std::uint8_t> y(n);
    Rng data_rng(5005);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(data_rng.below(2));
      for (std::size_t f = 0; f < d; ++f) x.at(i, f) = data_rng.normal();
    }
    y[0] = 1;
    y[1] = 0;
    MlpNetwork net(d);
    Rng init_rng(Rng::derive(5005, 0x317a9));
    net.init_weights(init_rng);
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    std::vector<double> grad;
    net.loss_and_grad(x, y, rows, &grad);
    MlpNetwork probe = net;
    constexpr double h = 1e-6;
    for (std::size_t i = 0; i < net.n_params() && failure.empty(); ++i) {
      const double saved = probe.params[i];
      probe.params[i] = saved + h;
      const double up = probe.loss_and_grad(x, y, rows, nullptr);
      probe.params[i] = saved - h;
      const double down = probe.loss_and_grad(x, y, rows, nullptr);
      probe.params[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      if (std::abs(grad[i] - numeric) > 1e-5 * std::max(1.0, std::abs(grad[i]))) {
        failure = "MLP gradient mismatch at parameter " + std::to_string(i);
      }
    }
  }

  // Training data shared by the remaining checks.
  SynthConfig config;
  config.n_instances = 300;
  config.seed = 55;
  const RawTables tables = generate_synthetic(config);
  const Cohort cohort = build_cohort(tables);
  const CutoffDataset dataset = build_cutoff_dataset(cohort, tables, 28, LeakagePolicy{});

  // GBDT stage-wise training loss never increases.
  if (failure.empty()) {
    const FittedModel gbdt = train_model(parse_model_name("GBDT"), dataset.x, dataset.y, 0);
    const auto* model = dynamic_cast<const GbdtModel*>(gbdt.model.get());
    if (model == nullptr || model->train_log_loss.size() != 250) {
      failure = "GBDT stage loss trace missing";
    } else {
      for (std::size_t s = 1; s < model->train_log_loss.size(); ++s) {
        if (model->train_log_loss[s] > model->train_log_loss[s - 1] + 1e-9) {
          failure = "GBDT training loss rose at stage " + std::to_string(s);
          break;
        }
      }
    }
  }

  // Determinism and probability bounds under fuzzed inputs for the whole zoo.
  if (failure.empty()) {
    Rng fuzz(5050);
    Matrix wild(200, kNumFeatures);
    for (double& v : wild.data) {
      v = fuzz.normal() * 50.0 + (fuzz.below(4) == 0 ? 300.0 : 0.0);  // far outside training range
    }
    for (const ModelSpec& spec : model_zoo()) {
      const FittedModel a = train_model(spec, dataset.x, dataset.y, 1);
      const FittedModel b = train_model(spec, dataset.x, dataset.y, 1);
      const std::vector<double> pa = a.predict_proba(wild);
      const std::vector<double> pb = b.predict_proba(wild);
      if (pa != pb) {
        failure = std::string(spec.name) + " is not deterministic under a fixed seed";
        break;
      }
      for (const double p : pa) {
        if (!(std::isfinite(p) && p >= 0.0 && p <= 1.0)) {
          failure = std::string(spec.name) + " produced probability " + std::to_string(p);
          break;
        }
      }
      if (!failure.empty()) break;
    }
  }

  verdict(5, failure.empty(),
          failure.empty() ? "MLP gradient <= 1e-5 rel, GBDT loss monotone over 250 stages, "
                            "probabilities bounded, fits deterministic"
                          : failure);
}

// --------------------------------------------------------------------------
// 6. Null-signal control: zero effect sizes must score at chance everywhere.

TEST(Acceptance, Criterion06NullSignalControl) {
  SynthConfig config;
  config.n_instances = 2000;
  config.engagement_effect = 0.0;
  config.score_effect = 0.0;
  config.seed = 66;
  const RawTables tables = generate_synthetic(config);
  const Cohort cohort = build_cohort(tables);

  const BenchmarkOutput out = run_benchmark(cohort, tables, kWeeklyCutoffs, model_zoo(),
                                            {0, 1, 2}, LeakagePolicy{},
                                            std::max(1u, std::thread::hardware_concurrency()));
  const std::vector<AggregateResult> agg = aggregate(out.results);

  double worst = 0.0;
  std::string worst_cell;
  for (const AggregateResult& cell : agg) {
    const double gap = std::abs(cell.mean.roc_auc - 0.5);
    if (gap > worst) {
      worst = gap;
      worst_cell = std::string(model_spec(cell.model).name) + " at t=" +
                   std::to_string(cell.cutoff) + " (mean " + fmt(cell.mean.roc_auc) + ")";
    }
  }
  verdict(6, worst <= 0.05,
          "largest |mean ROC-AUC - 0.5| = " + fmt(worst) + " at " + worst_cell + " over " +
              std::to_string(agg.size()) + " model/cutoff cells");
}

// --------------------------------------------------------------------------
// 7. Planted post-cutoff assessment signal must inflate the leaky policy.

TEST(Acceptance, Criterion07PlantedSignalAblation) {
  SynthConfig config;
  config.n_instances = 2000;
  config.engagement_effect = 0.0;  // clicks carry no outcome signal
  config.score_effect = 14.0;      // scores separate the classes strongly
  config.assessment_due_days = {14, 33, 52, 75, 100};  // all after the earliest cutoff
  config.seed = 77;
  const RawTables tables = generate_synthetic(config);
  const Cohort cohort = build_cohort(tables);

  const AblationOutput out =
      ablation(cohort, tables, {7}, specs_for({"RF"}), {0, 1},
               std::max(1u, std::thread::hardware_concurrency()));
  const AblationCell& cell = out.cells.at(0);
  const double gain = cell.delta_assessment();
  verdict(7, gain >= 0.10,
          "RF at t=7: strict " + fmt(cell.strict_roc_auc) + ", leaky-assessment " +
              fmt(cell.leaky_assessment_roc_auc) + " (gain " + fmt(gain) + ", need >= 0.10)");
}

// --------------------------------------------------------------------------
// 8. Split contract over 100 fixtures.

TEST(Acceptance, Criterion08SplitContract) {
  Rng rng(8008);
  int fixtures = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n_pos = 15 + rng.below(85);
    const std::size_t n_neg = 15 + rng.below(85);
    std::vector<std::uint8_t> y(n_pos, 1);
    y.insert(y.end(), n_neg, 0);
    Rng shuffle_rng(9000 + static_cast<std::uint64_t>(round));
    shuffle_rng.shuffle(y);

    const auto seed = static_cast<std::uint64_t>(round);
    const SplitIndices a = stratified_split(y, seed);
    const SplitIndices b = stratified_split(y, seed);
    bool ok = a.train == b.train && a.test == b.test;  // seed-deterministic

    std::size_t test_pos = 0;
    for (const std::size_t i : a.test) test_pos += y[i];
    const double pop = static_cast<double>(n_pos) / static_cast<double>(n_pos + n_neg);
    const double got = static_cast<double>(test_pos) / static_cast<double>(a.test.size());
    ok = ok && std::abs(got - pop) <= 1.0 / static_cast<double>(a.test.size());
    if (!ok) {
      verdict(8, false, "split contract violated on fixture " + std::to_string(round));
      return;
    }
    ++fixtures;
  }
  verdict(8, true, "class ratio within 1/|test| and seed-deterministic on " +
                       std::to_string(fixtures) + " fixtures");
}

// --------------------------------------------------------------------------
// Criteria 9-13: user-supplied OULAD data.

struct OuladData {
  RawTables tables;
  Cohort cohort;
  fs::path root;
};

const OuladData* oulad() {
  static std::optional<OuladData> cache;
  static bool attempted = false;
  if (!attempted) {
    attempted = true;
    const char* root = std::getenv("LEAP_OULAD_ROOT");
    if (root != nullptr && *root != '\0') {
      OuladData data;
      data.root = root;
      data.tables = load_tables(data.root);
      data.cohort = build_cohort(data.tables);
      cache = std::move(data);
    }
  }
  return cache ? &*cache : nullptr;
}

unsigned oulad_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Strict full-zoo grid over all weekly cutoffs, shared by criteria 10 and 11.
const std::vector<AggregateResult>& oulad_strict_grid() {
  static std::optional<std::vector<AggregateResult>> cache;
  if (!cache) {
    const OuladData* data = oulad();
    const BenchmarkOutput out = run_benchmark(data->cohort, data->tables, kWeeklyCutoffs,
                                              model_zoo(), {0, 1, 2}, LeakagePolicy{},
                                              oulad_jobs());
    cache = aggregate(out.results);
  }
  return *cache;
}

const AggregateResult* find_cell(const std::vector<AggregateResult>& agg, std::int32_t cutoff,
                                 std::string_view model) {
  for (const AggregateResult& cell : agg) {
    if (cell.cutoff == cutoff && model_spec(cell.model).name == model) return &cell;
  }
  return nullptr;
}

TEST(Acceptance, Criterion09OuladCohortStats) {
  const OuladData* data = oulad();
  if (data == nullptr) {
    skipped(9, "set LEAP_OULAD_ROOT to a directory with the five OULAD CSVs");
    GTEST_SKIP();
  }
  const CohortSummary& s = data->cohort.summary;
  const double pct = std::round(s.positive_fraction * 1000.0) / 10.0;
  const bool ok = s.n_instances == 32593 && s.n_runs == 22 && pct == 47.2;
  verdict(9, ok,
          "instances " + std::to_string(s.n_instances) + " (expect 32593), runs " +
              std::to_string(s.n_runs) + " (expect 22), positive " + fmt(pct) +
              "% (expect 47.2%)");
}

TEST(Acceptance, Criterion10OuladEarlinessTrend) {
  if (oulad() == nullptr) {
    skipped(10, "set LEAP_OULAD_ROOT to a directory with the five OULAD CSVs");
    GTEST_SKIP();
  }
  const std::vector<AggregateResult>& agg = oulad_strict_grid();

  std::vector<double> best(kWeeklyCutoffs.size(), 0.0);
  for (std::size_t c = 0; c < kWeeklyCutoffs.size(); ++c) {
    for (const AggregateResult& cell : agg) {
      if (cell.cutoff == kWeeklyCutoffs[c]) best[c] = std::max(best[c], cell.mean.roc_auc);
    }
  }
  bool monotone = true;
  for (std::size_t c = 1; c < best.size(); ++c) {
    monotone = monotone && best[c] >= best[c - 1] - 0.005;
  }
  std::size_t gain_at = 1;
  double gain = -1.0;
  for (std::size_t c = 1; c < best.size(); ++c) {
    if (best[c] - best[c - 1] > gain) {
      gain = best[c] - best[c - 1];
      gain_at = c;
    }
  }
  const bool gain_ok = kWeeklyCutoffs[gain_at - 1] == 14 && gain >= 0.03;
  std::string curve;
  for (std::size_t c = 0; c < best.size(); ++c) curve += (c ? " " : "") + fmt(best[c]);
  verdict(10, monotone && gain_ok,
          "best strict ROC-AUC per cutoff [" + curve + "]; largest gain " + fmt(gain) + " at " +
              std::to_string(kWeeklyCutoffs[gain_at - 1]) + "->" +
              std::to_string(kWeeklyCutoffs[gain_at]) + " (expect 14->21, >= 0.03)");
}

TEST(Acceptance, Criterion11OuladAnchorPoints) {
  if (oulad() == nullptr) {
    skipped(11, "set LEAP_OULAD_ROOT to a directory with the five OULAD CSVs");
    GTEST_SKIP();
  }
  const std::vector<AggregateResult>& agg = oulad_strict_grid();
  const AggregateResult* rf7 = find_cell(agg, 7, "RF");
  const AggregateResult* gbdt56 = find_cell(agg, 56, "GBDT");
  const bool ok = rf7 != nullptr && gbdt56 != nullptr &&
                  std::abs(rf7->mean.roc_auc - 0.7151) <= 0.03 &&
                  std::abs(gbdt56->mean.roc_auc - 0.8602) <= 0.03 &&
                  std::abs(gbdt56->mean.brier - 0.1511) <= 0.02;
  verdict(11, ok,
          "RF t=7 AUC " + fmt(rf7 ? rf7->mean.roc_auc : -1) + " (expect 0.7151 +/- 0.03); "
          "GBDT t=56 AUC " + fmt(gbdt56 ? gbdt56->mean.roc_auc : -1) +
          " (expect 0.8602 +/- 0.03), Brier " + fmt(gbdt56 ? gbdt56->mean.brier : -1) +
          " (expect 0.1511 +/- 0.02)");
}

TEST(Acceptance, Criterion12OuladLeakageInflation) {
  const OuladData* data = oulad();
  if (data == nullptr) {
    skipped(12, "set LEAP_OULAD_ROOT to a directory with the five OULAD CSVs");
    GTEST_SKIP();
  }
  const AblationOutput out = ablation(data->cohort, data->tables, {7},
                                      specs_for({"RF", "GBDT"}), {0, 1, 2}, oulad_jobs());
  const AblationCell* rf = nullptr;
  const AblationCell* gbdt = nullptr;
  for (const AblationCell& cell : out.cells) {
    if (cell.model == ModelKind::random_forest) rf = &cell;
    if (cell.model == ModelKind::gbdt) gbdt = &cell;
  }
  const bool ok = rf != nullptr && gbdt != nullptr && rf->delta_all() >= 0.15 &&
                  gbdt->delta_all() >= 0.15 && rf->delta_assessment() >= 0.15;
  verdict(12, ok,
          "t=7 inflation: RF leaky-all +" + fmt(rf ? rf->delta_all() : -1) +
              ", GBDT leaky-all +" + fmt(gbdt ? gbdt->delta_all() : -1) +
              ", RF leaky-assessment +" + fmt(rf ? rf->delta_assessment() : -1) +
              " (each needs >= 0.15)");
}

TEST(Acceptance, Criterion13OuladImportanceShift) {
  const OuladData* data = oulad();
  if (data == nullptr) {
    skipped(13, "set LEAP_OULAD_ROOT to a directory with the five OULAD CSVs");
    GTEST_SKIP();
  }
  const auto reports = importance_profile(data->cohort, data->tables, {7, 56},
                                          specs_for({"RF", "GBDT"}), 0);
  std::map<std::pair<std::string, std::int32_t>, std::string> top;
  for (const ImportanceReport& report : reports) {
    top[{report.model, report.cutoff}] = report.ranked.at(0).feature;
  }
  const bool ok = top[{"GBDT", 7}] == "total_clicks_t" && top[{"GBDT", 56}] == "avg_score_t" &&
                  top[{"RF", 56}] == "avg_score_t";
  verdict(13, ok,
          "top features: GBDT t=7 " + top[{"GBDT", 7}] + " (expect total_clicks_t), GBDT t=56 " +
              top[{"GBDT", 56}] + " (expect avg_score_t), RF t=56 " + top[{"RF", 56}] +
              " (expect avg_score_t)");
}

}  // namespace
}  // namespace leap
