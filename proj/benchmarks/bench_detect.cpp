#include <benchmark/benchmark.h>

#include "regime_split/binary_detector.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/multiclass_detector.hpp"
#include "regime_split/switching_regression.hpp"

using namespace regime_split;

namespace {

generated_data make(generator_spec::kind_t kind, std::size_t n) {
  generator_spec g;
  g.kind = kind;
  g.n = n;
  g.seed = 11;
  switch (kind) {
    case generator_spec::kind_t::shift_mixture:
      g.epsilon = 0.1;
      g.h = 2.0;
      break;
    case generator_spec::kind_t::variance_mixture:
      g.epsilon = 0.05;
      g.lambda = 3.0;
      break;
    case generator_spec::kind_t::multiclass_mixture:
      g.epsilons = {0.3, 0.15};
      g.shifts = {1.0, 3.0, 7.0};
      break;
    case generator_spec::kind_t::switching_regression:
      g.epsilon = 0.05;
      g.beta0 = {1.0, 1.0};
      g.beta1 = {1.0, 2.0};
      break;
    default:
      break;
  }
  return generate(g);
}

void detect_shift(benchmark::State& state) {
  sample x = make(generator_spec::kind_t::shift_mixture,
                  static_cast<std::size_t>(state.range(0))).values;
  detection_config cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_symmetric(x, cfg, 0.05).j);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(detect_shift)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void detect_variance(benchmark::State& state) {
  sample x = make(generator_spec::kind_t::variance_mixture,
                  static_cast<std::size_t>(state.range(0))).values;
  detection_config cfg;
  cfg.b_max = 9.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_variance_contamination(x, cfg, 0.12).j);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(detect_variance)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void peel_three_classes(benchmark::State& state) {
  sample x = make(generator_spec::kind_t::multiclass_mixture,
                  static_cast<std::size_t>(state.range(0))).values;
  detection_config cfg;
  cfg.b_max = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_multiclass(x, cfg, 0.08, 8).k_hat);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(peel_three_classes)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void regression_tracks(benchmark::State& state) {
  regression_data d = make(generator_spec::kind_t::switching_regression,
                           static_cast<std::size_t>(state.range(0))).regression;
  detection_config cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_switching_regression(d, cfg, 0.04).any_switch);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(regression_tracks)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
