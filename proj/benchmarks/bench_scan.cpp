#include <benchmark/benchmark.h>

#include "regime_split/generators.hpp"
#include "regime_split/split_statistic.hpp"

using namespace regime_split;

namespace {

sample shift_mixture(std::size_t n, std::uint64_t seed) {
  generator_spec g;
  g.kind = generator_spec::kind_t::shift_mixture;
  g.n = n;
  g.epsilon = 0.1;
  g.h = 2.0;
  g.seed = seed;
  return generate(g).values;
}

void scan_breakpoints(benchmark::State& state) {
  sample x = shift_mixture(static_cast<std::size_t>(state.range(0)), 7);
  double center = sample_mean(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(breakpoint_scan(x, center).j);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(scan_breakpoints)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void scan_fixed_grid(benchmark::State& state) {
  sample x = shift_mixture(static_cast<std::size_t>(state.range(0)), 7);
  double center = sample_mean(x);
  std::vector<double> grid = default_grid(x, center);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_grid(x, center, grid).j);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(scan_fixed_grid)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

void psi_single_band(benchmark::State& state) {
  sample x = shift_mixture(static_cast<std::size_t>(state.range(0)), 7);
  double center = sample_mean(x);
  band_partition p = partition_by_band(x, center, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(x, p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(psi_single_band)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
