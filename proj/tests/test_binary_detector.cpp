#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "regime_split/binary_detector.hpp"
#include "regime_split/errors.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/theory_bounds.hpp"

using namespace regime_split;

namespace {

detection_config small_cfg() {
  detection_config cfg;
  cfg.n_min = 3;
  return cfg;
}

}  // namespace

TEST_CASE("three-point example: one outlier drives the decision") {
  sample s = {0.0, 0.0, 10.0};
  detection_report rep = detect_symmetric(s, small_cfg(), 1.0);
  CHECK(rep.switches);
  CHECK(rep.j == doctest::Approx(20.0 / 9.0).epsilon(1e-12));
  CHECK(rep.c == 1.0);
  REQUIRE(rep.epsilon_hat.has_value());
  CHECK(*rep.epsilon_hat == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  REQUIRE(rep.h_hat.has_value());
  CHECK(*rep.h_hat == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rep.partition_at_b_star.n2() == 1);
  CHECK(rep.partition_at_b_star.abnormal_indices[0] == 2);
}

TEST_CASE("homogeneous sample with a huge threshold stays accepted") {
  generator_spec g;
  g.n = 500;
  g.seed = 4;
  detection_report rep = detect_symmetric(generate(g).values, detection_config{}, 10.0);
  CHECK_FALSE(rep.switches);
  CHECK_FALSE(rep.epsilon_hat.has_value());
  CHECK_FALSE(rep.h_hat.has_value());
}

TEST_CASE("input validation covers the documented failure cases") {
  detection_config cfg;
  CHECK_THROWS_AS(detect_symmetric({}, cfg, 1.0), error);
  CHECK_THROWS_AS(detect_symmetric(sample{1.0, 2.0, 3.0}, cfg, 1.0), error);
  sample bad(50, 0.5);
  bad[7] = std::numeric_limits<double>::quiet_NaN();
  try {
    detect_symmetric(bad, cfg, 1.0);
    FAIL("expected non_finite_value");
  } catch (const error& e) {
    CHECK(e.code() == errc::non_finite_value);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 8);
  }
}

TEST_CASE("constant sample reports no realizable band") {
  sample s(100, 2.5);
  detection_report rep = detect_symmetric(s, detection_config{}, 0.5);
  CHECK_FALSE(rep.switches);
  CHECK(rep.j == 0.0);
  CHECK(rep.diagnostic.find("no realizable band") != std::string::npos);
}

TEST_CASE("shift mixture is detected with accurate epsilon") {
  generator_spec g;
  g.n = 1000;
  g.epsilon = 0.1;
  g.h = 2.0;
  g.seed = 11;
  detection_report rep = detect_symmetric(generate(g).values, detection_config{}, 0.038);
  CHECK(rep.switches);
  REQUIRE(rep.epsilon_hat.has_value());
  CHECK(*rep.epsilon_hat == doctest::Approx(0.1).epsilon(0.5));
  REQUIRE(rep.h_hat.has_value());
  CHECK(*rep.h_hat == doctest::Approx(2.0).epsilon(0.5));
}

TEST_CASE("variance band profile is the truncated exponential mean") {
  CHECK(variance_band_phi(0.0) == 0.0);
  CHECK(variance_band_phi(1.0) == doctest::Approx(0.41802).epsilon(1e-4));
  CHECK(variance_band_phi(50.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(variance_band_phi(2.0) > variance_band_phi(1.0));
  CHECK_THROWS_AS(variance_band_phi(-0.5), error);
  for (double b : {0.3, 1.0, 2.7, 8.0}) {
    CHECK(variance_band_phi_inverse(variance_band_phi(b)) == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("variance contamination detection flags inflated spread") {
  generator_spec g;
  g.kind = generator_spec::kind_t::variance_mixture;
  g.n = 1000;
  g.epsilon = 0.05;
  g.lambda = 3.0;
  g.seed = 17;
  detection_config cfg;
  cfg.variant = detection_config::variant_t::variance_contamination;
  cfg.b_max = 9.0;
  detection_report rep = detect_variance_contamination(generate(g).values, cfg, 0.1244);
  CHECK(rep.switches);
  REQUIRE(rep.epsilon_hat.has_value());
  CHECK(*rep.epsilon_hat == doctest::Approx(0.05).epsilon(0.6));
  CHECK_FALSE(rep.h_hat.has_value());

  CHECK_THROWS_AS(detect_variance_contamination(sample(100, 3.25), cfg, 0.1), error);
}

TEST_CASE("homogeneous variance sample is accepted at the table threshold") {
  generator_spec g;
  g.n = 1000;
  g.seed = 23;
  detection_config cfg;
  cfg.variant = detection_config::variant_t::variance_contamination;
  detection_report rep = detect_variance_contamination(generate(g).values, cfg, 0.1244);
  CHECK_FALSE(rep.switches);
}

TEST_CASE("asymmetric bands need a profile and flag one-sided shifts") {
  generator_spec g;
  g.n = 800;
  g.epsilon = 0.1;
  g.h = 3.0;
  g.seed = 29;
  sample x = generate(g).values;

  detection_config cfg;
  cfg.variant = detection_config::variant_t::asymmetric;
  CHECK_THROWS_AS(detect_asymmetric(x, cfg, 0.05), error);

  cfg.phi = [](double b) { return b; };
  detection_report rep = detect_asymmetric(x, cfg, 0.05);
  CHECK(rep.switches);
  REQUIRE(rep.epsilon_hat.has_value());
  CHECK(*rep.epsilon_hat == doctest::Approx(0.1).epsilon(0.5));
  CHECK_FALSE(rep.h_hat.has_value());

  cfg.phi = [](double b) { return -b; };
  CHECK_THROWS_AS(detect_asymmetric(x, cfg, 0.05), error);
}

TEST_CASE("dispatcher routes on the configured variant") {
  sample s = {0.0, 0.0, 10.0};
  detection_config cfg = small_cfg();
  CHECK(detect(s, cfg, 1.0).j == detect_symmetric(s, cfg, 1.0).j);
  cfg.variant = detection_config::variant_t::variance_contamination;
  CHECK(detect(s, cfg, 1.0).j == detect_variance_contamination(s, cfg, 1.0).j);
}

TEST_CASE("consistent estimates recover the planted mixture") {
  // theta = eps*h for eps=0.1, h=2; b* is the frozen optimal band.
  mixture_estimate est = consistent_estimates(0.2, 2.00106059, standard_normal_pdf);
  CHECK(est.method == mixture_estimate::method_t::consistent_system);
  CHECK(est.epsilon_hat == doctest::Approx(0.1).epsilon(0.01));
  CHECK(est.h_hat == doctest::Approx(2.0).epsilon(0.01));
  CHECK(est.h_hat == doctest::Approx(0.2 / est.epsilon_hat).epsilon(1e-12));

  CHECK_THROWS_AS(consistent_estimates(0.0, 2.0, standard_normal_pdf), error);
}
