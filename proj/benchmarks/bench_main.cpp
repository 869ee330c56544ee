#include <benchmark/benchmark.h>

#include <vector>

#include "leocov/analytic.hpp"
#include "leocov/montecarlo.hpp"
#include "leocov/optimizer.hpp"
#include "leocov/units.hpp"

using namespace leocov;

namespace {

Scenario bench_scenario() { return reference_scenario(-130.0, 0.1); }

void BM_AverageInterference(benchmark::State& state) {
  const Scenario s = bench_scenario().with_psi(deg_to_rad(static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(average_interference(s));
}
BENCHMARK(BM_AverageInterference)->Arg(30)->Arg(90)->Arg(180);

void BM_CoverageProbability(benchmark::State& state) {
  const Scenario s = bench_scenario().with_psi(deg_to_rad(static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(coverage_probability(s).p_cov);
}
BENCHMARK(BM_CoverageProbability)->Arg(30)->Arg(90)->Arg(180);

void BM_Snapshot(benchmark::State& state) {
  Scenario s = bench_scenario();
  s.constellation.n_sats = static_cast<std::size_t>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) {
    auto rng = derive_stream(1, k++);
    const auto snap = realize_snapshot(s, rng);
    benchmark::DoNotOptimize(evaluate_snapshot(snap, s, rng));
  }
}
BENCHMARK(BM_Snapshot)->Arg(100)->Arg(1000)->Arg(5000);

void BM_BeamwidthSweepCRN(benchmark::State& state) {
  const Scenario s = bench_scenario();
  std::vector<double> psi;
  for (int d = 5; d <= 180; d += 5) psi.push_back(deg_to_rad(d));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_beamwidth_sweep(s, psi, 100, 1, {1}));
}
BENCHMARK(BM_BeamwidthSweepCRN)->Unit(benchmark::kMillisecond);

void BM_JointOptimization(benchmark::State& state) {
  OptimizationRequest req;
  req.scenario = bench_scenario();
  req.mode = OptimizeMode::joint;
  const auto n = static_cast<std::size_t>(state.range(0));
  req.grid_resolution = {n, n};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_joint(req).p_cov_star);
}
BENCHMARK(BM_JointOptimization)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
