// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "exsym/channel.hpp"
#include "exsym/symmetry.hpp"

using namespace exsym;

namespace {

const DensityMatrix& plus_state() {
  static const DensityMatrix rho = DensityMatrix::pure(Vector4::Constant(Complex(0.5, 0.0)));
  return rho;
}

NoiseTrajectoryConfig mc_config(benchmark::State& state) {
  NoiseTrajectoryConfig cfg;
  cfg.n_trajectories = static_cast<std::size_t>(state.range(0));
  cfg.seed = 1;
  return cfg;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto cfg = mc_config(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_dephasing_serial(plus_state(), ChannelParams::identical(1, 1), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto cfg = mc_config(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_dephasing(plus_state(), ChannelParams::identical(1, 1), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_symmetry_scan_serial(BellState::B3, 0.0, state.range(0), 1, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_symmetry_scan(BellState::B3, 0.0, state.range(0), 1, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OptimizeSerial(benchmark::State& state) {
  const auto pattern = ConstraintPattern::from_rows({1});
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize_symmetric_probability_serial(
        BellState::B3, 0.0, pattern, {1000, static_cast<std::size_t>(state.range(0)), 1}));
}

void BM_OptimizeParallel(benchmark::State& state) {
  const auto pattern = ConstraintPattern::from_rows({1});
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize_symmetric_probability(
        BellState::B3, 0.0, pattern, {1000, static_cast<std::size_t>(state.range(0)), 1}));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimizeSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeParallel)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
