#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "regime_split/errors.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/multiclass_detector.hpp"
#include "regime_split/split_statistic.hpp"
#include "regime_split/threshold_calibration.hpp"

using namespace regime_split;

namespace {

sample three_class_sample(std::size_t n, std::uint64_t seed) {
  generator_spec g;
  g.kind = generator_spec::kind_t::multiclass_mixture;
  g.n = n;
  g.epsilons = {0.3, 0.15};
  g.shifts = {1.0, 3.0, 7.0};
  g.seed = seed;
  return generate(g).values;
}

multiclass_threshold table_thresholds() {
  auto null_sampler = [](std::size_t n, std::uint64_t seed) {
    generator_spec g;
    g.n = n;
    g.seed = seed;
    return generate(g).values;
  };
  auto j_stat = [](const sample& x) {
    return breakpoint_scan(x, mode_estimate(x), 2.0).j;
  };
  return calibrate_multiclass_threshold(null_sampler, j_stat,
                                        {50, 100, 220, 470, 1000, 1500}, 0.9975, 0.5, 8,
                                        1500, 777);
}

}  // namespace

TEST_CASE("histogram mode finds the crowded bin, leftmost on ties") {
  sample s = {0.0, 0.1, 0.2, 5.0};
  CHECK(histogram_mode(s) < 2.5);
  sample tied = {0.0, 0.0, 1.0, 1.0};
  CHECK(histogram_mode(tied) == doctest::Approx(0.25));
}

TEST_CASE("mode estimate refines toward the local mean") {
  sample tied = {0.0, 0.0, 1.0, 1.0};
  CHECK(mode_estimate(tied) == doctest::Approx(0.0));

  generator_spec g;
  g.n = 2000;
  g.mu0 = 3.0;
  g.seed = 8;
  CHECK(mode_estimate(generate(g).values) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("huge threshold accepts immediately with a single step") {
  sample x = three_class_sample(500, 1);
  detection_config cfg;
  cfg.b_max = 2.0;
  multiclass_report rep = detect_multiclass(x, cfg, 100.0, 8);
  CHECK(rep.k_hat == 0);
  CHECK(rep.termination == multiclass_report::termination_t::accepted);
  CHECK(rep.class_fractions.empty());
  CHECK(rep.class_centers.size() == 1);
  CHECK(rep.peel_trace.size() == 1);
  CHECK_FALSE(rep.peel_trace[0].switches);
}

TEST_CASE("fixed threshold must be positive") {
  detection_config cfg;
  CHECK_THROWS_AS(detect_multiclass(three_class_sample(200, 2), cfg, 0.0, 8), error);
  CHECK_THROWS_AS(detect_multiclass(three_class_sample(200, 2), cfg, 1.0, 0), error);
}

TEST_CASE("three classes peel into k_hat = 2 at the calibrated thresholds") {
  multiclass_threshold mt = table_thresholds();
  detection_config cfg;
  cfg.b_max = 2.0;
  int correct = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    sample x = three_class_sample(1000, 100 + seed);
    multiclass_report rep = detect_multiclass(x, cfg, mt, 8);
    if (rep.k_hat == 2) {
      ++correct;
      CHECK(rep.class_fractions.size() == 2);
      // A run that ends in acceptance carries the final round's center
      // and trace entry; a run whose remainder dropped below the step
      // floor stops after the second peel.
      if (rep.termination == multiclass_report::termination_t::accepted) {
        CHECK(rep.class_centers.size() == 3);
        CHECK(rep.peel_trace.size() == 3);
      } else {
        CHECK(rep.termination == multiclass_report::termination_t::sample_exhausted);
        CHECK(rep.class_centers.size() == 2);
        CHECK(rep.peel_trace.size() == 2);
      }
      // The farthest class (share 0.15) peels first, then the middle one.
      CHECK(rep.class_fractions[0] == doctest::Approx(0.15).epsilon(0.4));
      CHECK(rep.class_fractions[1] == doctest::Approx(0.30).epsilon(0.4));
    }
  }
  CHECK(correct >= 18);
}

TEST_CASE("homogeneous samples keep k_hat = 0 at the calibrated thresholds") {
  multiclass_threshold mt = table_thresholds();
  detection_config cfg;
  cfg.b_max = 2.0;
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    generator_spec g;
    g.n = 500;
    g.seed = 500 + seed;
    if (detect_multiclass(generate(g).values, cfg, mt, 8).k_hat == 0) {
      ++accepted;
    }
  }
  CHECK(accepted >= 19);
}

TEST_CASE("tiny remainders terminate as sample_exhausted") {
  sample x = three_class_sample(30, 3);
  detection_config cfg;
  cfg.b_max = 2.0;
  multiclass_report rep = detect_multiclass(x, cfg, 0.5, 8);
  CHECK(rep.k_hat == 0);
  CHECK(rep.termination == multiclass_report::termination_t::sample_exhausted);
}

TEST_CASE("max_classes caps the peel count") {
  sample x = three_class_sample(1000, 4);
  detection_config cfg;
  cfg.b_max = 2.0;
  multiclass_report rep = detect_multiclass(x, cfg, 0.05, 1);
  CHECK(rep.k_hat == 1);
  CHECK(rep.termination == multiclass_report::termination_t::max_classes_reached);
}
