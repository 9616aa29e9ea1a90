#include "leap/evaluation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>

#include "leap/error.hpp"
#include "leap/split.hpp"

namespace leap {
namespace {

Matrix take_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
  Matrix out(rows.size(), x.cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy_n(x.row(rows[r]), x.cols, out.row(r));
  }
  return out;
}

std::vector<std::uint8_t> take_labels(const std::vector<std::uint8_t>& y,
                                      const std::vector<std::size_t>& rows) {
  std::vector<std::uint8_t> out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out[r] = y[rows[r]];
  return out;
}

std::string cell_name(LeakagePolicy policy, std::int32_t cutoff, const ModelSpec& spec,
                      std::uint64_t seed) {
  std::ostringstream os;
  os << "policy=" << policy_name(policy) << " cutoff=" << cutoff << " model=" << spec.name
     << " seed=" << seed;
  return os.str();
}

// Fit, score, and measure one benchmark cell.  `out` carries the identifying
// fields on entry; only metrics and wall time are written here.
void run_cell(const CutoffDataset& dataset, const SplitIndices& split, const ModelSpec& spec,
              std::uint64_t seed, RunResult& out) {
  const auto start = std::chrono::steady_clock::now();
  const Matrix x_train = take_rows(dataset.x, split.train);
  const std::vector<std::uint8_t> y_train = take_labels(dataset.y, split.train);
  const Matrix x_test = take_rows(dataset.x, split.test);
  const std::vector<std::uint8_t> y_test = take_labels(dataset.y, split.test);
  const FittedModel fitted = train_model(spec, x_train, y_train, seed);
  const std::vector<double> p = fitted.predict_proba(x_test);
  try {
    out.metrics = compute_metrics(y_test, p);
  } catch (const MetricUndefinedError& e) {
    throw MetricUndefinedError(std::string(e.what()) + " (" +
                               cell_name(dataset.policy, dataset.cutoff, spec, seed) + ")");
  }
  const auto stop = std::chrono::steady_clock::now();
  out.wall_seconds = std::chrono::duration<double>(stop - start).count();
}

}  // namespace

BenchmarkOutput run_benchmark(const Cohort& cohort, const RawTables& tables,
                              const std::vector<std::int32_t>& cutoffs,
                              const std::vector<ModelSpec>& specs,
                              const std::vector<std::uint64_t>& seeds, LeakagePolicy policy,
                              unsigned jobs, const std::vector<LeakInjection>& injections) {
  if (cutoffs.empty()) throw ConfigError("run_benchmark: empty cutoff list");
  if (specs.empty()) throw ConfigError("run_benchmark: empty model list");
  if (seeds.empty()) throw ConfigError("run_benchmark: empty seed list");

  BenchmarkOutput out;
  out.audits.reserve(cutoffs.size());
  out.results.resize(cutoffs.size() * specs.size() * seeds.size());

  // Datasets and splits are built serially up front; only the independent
  // (cutoff, model, seed) cells run on the worker pool.
  std::vector<CutoffDataset> datasets;
  datasets.reserve(cutoffs.size());
  std::vector<std::vector<SplitIndices>> splits(cutoffs.size());
  for (std::size_t d = 0; d < cutoffs.size(); ++d) {
    datasets.push_back(build_cutoff_dataset(cohort, tables, cutoffs[d], policy, injections));
    out.audits.push_back(datasets.back().audit);
    splits[d].reserve(seeds.size());
    for (const std::uint64_t seed : seeds) {
      splits[d].push_back(stratified_split(datasets[d].y, seed));
    }
  }

  struct Cell {
    std::size_t dataset = 0;
    std::size_t spec = 0;
    std::size_t seed = 0;
    std::size_t slot = 0;
  };
  std::vector<Cell> cells;
  cells.reserve(out.results.size());
  for (std::size_t d = 0; d < cutoffs.size(); ++d) {
    for (std::size_t m = 0; m < specs.size(); ++m) {
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const std::size_t slot = (d * specs.size() + m) * seeds.size() + s;
        RunResult& r = out.results[slot];
        r.policy = policy.mode;
        r.cutoff = cutoffs[d];
        r.model = specs[m].kind;
        r.seed = seeds[s];
        cells.push_back(Cell{d, m, s, slot});
      }
    }
  }

  const auto execute = [&](const Cell& cell) {
    run_cell(datasets[cell.dataset], splits[cell.dataset][cell.seed], specs[cell.spec],
             seeds[cell.seed], out.results[cell.slot]);
  };

  const unsigned workers =
      std::min<unsigned>(std::max(jobs, 1u), static_cast<unsigned>(cells.size()));
  if (workers <= 1) {
    for (const Cell& cell : cells) execute(cell);
    return out;
  }

  // Failures are collected per slot and rethrown in slot order after the
  // join, so the surfaced error does not depend on thread scheduling.
  std::vector<std::exception_ptr> failures(cells.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          execute(cells[i]);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

std::vector<AggregateResult> aggregate(const std::vector<RunResult>& results) {
  if (results.empty()) throw DataError("aggregate: no run results");

  std::set<std::uint64_t> expected_seeds;
  for (const RunResult& r : results) expected_seeds.insert(r.seed);

  using GroupKey = std::tuple<int, std::int32_t, int>;  // policy, cutoff, model
  std::map<GroupKey, std::map<std::uint64_t, const RunResult*>> groups;
  for (const RunResult& r : results) {
    const GroupKey key{static_cast<int>(r.policy), r.cutoff, static_cast<int>(r.model)};
    auto [it, inserted] = groups[key].emplace(r.seed, &r);
    if (!inserted) {
      throw DataError("aggregate: duplicate result for " +
                      cell_name(LeakagePolicy{r.policy}, r.cutoff, model_spec(r.model), r.seed));
    }
  }

  std::vector<AggregateResult> out;
  out.reserve(groups.size());
  for (const auto& [key, by_seed] : groups) {
    AggregateResult agg;
    agg.policy = static_cast<PolicyMode>(std::get<0>(key));
    agg.cutoff = std::get<1>(key);
    agg.model = static_cast<ModelKind>(std::get<2>(key));
    agg.n_seeds = by_seed.size();
    for (const std::uint64_t seed : expected_seeds) {
      if (!by_seed.contains(seed)) {
        throw DataError("aggregate: missing seed " + std::to_string(seed) + " for policy=" +
                        std::string(policy_name(LeakagePolicy{agg.policy})) +
                        " cutoff=" + std::to_string(agg.cutoff) +
                        " model=" + std::string(model_spec(agg.model).name));
      }
    }
    const double n = static_cast<double>(agg.n_seeds);
    for (std::size_t metric = 0; metric < kNumMetrics; ++metric) {
      double sum = 0.0;
      for (const auto& [seed, r] : by_seed) sum += metric_value(r->metrics, metric);
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& [seed, r] : by_seed) {
        const double d = metric_value(r->metrics, metric) - mean;
        ss += d * d;
      }
      metric_ref(agg.mean, metric) = mean;
      metric_ref(agg.std_dev, metric) = agg.n_seeds > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    }
    out.push_back(agg);
  }
  return out;
}

AblationOutput ablation(const Cohort& cohort, const RawTables& tables,
                        const std::vector<std::int32_t>& cutoffs,
                        const std::vector<ModelSpec>& specs,
                        const std::vector<std::uint64_t>& seeds, unsigned jobs) {
  constexpr std::array<PolicyMode, 3> kPolicies = {
      PolicyMode::strict,
      PolicyMode::leaky_assessment,
      PolicyMode::leaky_all,
  };

  AblationOutput out;
  for (const PolicyMode mode : kPolicies) {
    BenchmarkOutput one =
        run_benchmark(cohort, tables, cutoffs, specs, seeds, LeakagePolicy{mode}, jobs);
    out.results.insert(out.results.end(), one.results.begin(), one.results.end());
    out.audits.insert(out.audits.end(), one.audits.begin(), one.audits.end());
  }
  out.aggregates = aggregate(out.results);

  for (const std::int32_t cutoff : cutoffs) {
    for (const ModelSpec& spec : specs) {
      AblationCell cell;
      cell.cutoff = cutoff;
      cell.model = spec.kind;
      for (const AggregateResult& agg : out.aggregates) {
        if (agg.cutoff != cutoff || agg.model != spec.kind) continue;
        switch (agg.policy) {
          case PolicyMode::strict: cell.strict_roc_auc = agg.mean.roc_auc; break;
          case PolicyMode::leaky_assessment: cell.leaky_assessment_roc_auc = agg.mean.roc_auc; break;
          case PolicyMode::leaky_all: cell.leaky_all_roc_auc = agg.mean.roc_auc; break;
        }
      }
      out.cells.push_back(cell);
    }
  }
  return out;
}

std::vector<ImportanceReport> importance_profile(const Cohort& cohort, const RawTables& tables,
                                                 const std::vector<std::int32_t>& cutoffs,
                                                 const std::vector<ModelSpec>& specs,
                                                 std::uint64_t seed) {
  for (const ModelSpec& spec : specs) {
    if (!spec.supports_importance) {
      throw ConfigError("importance_profile: model " + std::string(spec.name) +
                        " does not expose feature importances");
    }
  }
  const std::vector<std::string> feature_names(kFeatureNames.begin(), kFeatureNames.end());

  std::vector<ImportanceReport> out;
  out.reserve(cutoffs.size() * specs.size());
  for (const std::int32_t cutoff : cutoffs) {
    const CutoffDataset dataset = build_cutoff_dataset(cohort, tables, cutoff, LeakagePolicy{});
    const SplitIndices split = stratified_split(dataset.y, seed);
    const Matrix x_train = take_rows(dataset.x, split.train);
    const std::vector<std::uint8_t> y_train = take_labels(dataset.y, split.train);
    for (const ModelSpec& spec : specs) {
      const FittedModel fitted = train_model(spec, x_train, y_train, seed);
      ImportanceReport report = feature_importance(fitted, feature_names);
      report.cutoff = cutoff;
      out.push_back(std::move(report));
    }
  }
  return out;
}

}  // namespace leap
