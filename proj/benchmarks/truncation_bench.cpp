// Cost of cutoff-first truncation over a cohort's interaction stream, the
// operation every per-cutoff dataset build runs first.

#include <benchmark/benchmark.h>

#include "leap/dataset.hpp"
#include "leap/synthetic.hpp"
#include "leap/temporal.hpp"

namespace {

const leap::Cohort& cohort() {
  static const leap::Cohort instance = [] {
    leap::SynthConfig config;
    config.n_instances = 2000;
    config.seed = 1;
    return leap::build_cohort(leap::generate_synthetic(config));
  }();
  return instance;
}

void BM_TruncateInteractions(benchmark::State& state) {
  const leap::InteractionView raw = leap::raw_interaction_view(cohort());
  const auto t = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(leap::truncate(raw, t));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(raw.records.size()));
}
BENCHMARK(BM_TruncateInteractions)->Arg(7)->Arg(28)->Arg(56);

void BM_FusedTruncatingView(benchmark::State& state) {
  const auto t = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(leap::interaction_view(cohort(), leap::Cutoff::bounded(t)));
  }
}
BENCHMARK(BM_FusedTruncatingView)->Arg(7)->Arg(56);

}  // namespace
