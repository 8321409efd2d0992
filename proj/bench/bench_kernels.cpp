// Serial reference path versus the OpenMP path of the Monte Carlo kernels.
// Both produce bit-identical output; only wall time differs.

#include <benchmark/benchmark.h>

#include "wpcn/coverage.hpp"
#include "wpcn/montecarlo.hpp"

using namespace wpcn;

namespace {

mc::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? mc::Exec::kParallel : mc::Exec::kSerial;
}

const LinkAnalysis& analysis() {
  static const LinkAnalysis a = LinkAnalysis::build(SystemParams{});
  return a;
}

void BM_Energy(benchmark::State& state) {
  const SystemParams p;
  const mc::SimWindow w;
  for (auto _ : state) benchmark::DoNotOptimize(mc::simulate_energy(p, w, 20000, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_Coverage(benchmark::State& state) {
  const mc::SimWindow w;
  const double zetas[] = {0.1, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mc::simulate_coverage_curve(analysis(), zetas, Link::kSecondary, w, 5000, {}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 5000);
}

void BM_Meta(benchmark::State& state) {
  const mc::SimWindow w;
  for (auto _ : state)
    benchmark::DoNotOptimize(mc::simulate_meta(analysis(), 0.316, Link::kPrimary, w, 5000, 1, {}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 5000);
}

}  // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_Energy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Meta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
