#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "regime_split/errors.hpp"
#include "regime_split/experiment_harness.hpp"
#include "regime_split/io.hpp"

using namespace regime_split;

namespace {

experiment_plan tiny_shift_plan() {
  experiment_plan plan;
  plan.name = "tiny";
  plan.seed = 5;
  experiment_row row;
  row.mode = experiment_row::mode_t::detect_shift;
  row.scenario = "h=2.0";
  row.generator.kind = generator_spec::kind_t::shift_mixture;
  row.generator.n = 200;
  row.generator.epsilon = 0.1;
  row.generator.h = 2.0;
  row.trials = 60;
  row.c = 0.09;
  plan.rows.push_back(row);
  return plan;
}

}  // namespace

TEST_CASE("presets carry the published row counts") {
  CHECK(preset("table1").rows.size() == 18);
  CHECK(preset("table2").rows.size() == 8);
  CHECK(preset("table3").rows.size() == 18);
  CHECK(preset("table4").rows.size() == 4);
  CHECK(preset("table5").rows.size() == 5);
  CHECK(preset("table6").rows.size() == 7);
  CHECK(preset("table7").rows.size() == 7);
  CHECK(preset("table8").rows.size() == 4);
  CHECK(preset("table9").rows.size() == 4);
  CHECK_THROWS_AS(preset("table10"), error);
  CHECK_THROWS_AS(preset(""), error);
}

TEST_CASE("preset parameters match their studies") {
  experiment_plan t2 = preset("table2");
  CHECK(t2.rows[0].generator.epsilon == 0.1);
  CHECK(t2.rows[0].generator.h == 2.0);
  CHECK(t2.rows[0].generator.n == 300);
  CHECK(t2.rows[0].c == doctest::Approx(0.0710));
  CHECK(t2.rows[4].generator.h == 1.5);

  experiment_plan t5 = preset("table5");
  CHECK(t5.rows[0].generator.lambda == 5.0);
  CHECK(t5.rows[0].generator.epsilon == 0.01);
  CHECK(t5.rows[0].b_max == 25.0);

  experiment_plan t6 = preset("table6");
  CHECK(t6.rows[0].generator.epsilons == std::vector<double>{0.3, 0.15});
  CHECK(t6.rows[0].generator.shifts == std::vector<double>{1.0, 3.0, 7.0});
  CHECK(t6.rows[0].true_k == 2);
  CHECK(t6.rows[0].b_max == 2.0);

  experiment_plan t7 = preset("table7");
  CHECK(t7.rows[0].generator.dim == 2);
  CHECK(t7.rows[0].generator.covariance ==
        std::vector<double>{0.745, -0.07, -0.07, 0.51});
  CHECK(t7.rows[0].b_max == doctest::Approx(std::sqrt(13.0) - std::sqrt(5.0)));

  experiment_plan t9 = preset("table9");
  CHECK(t9.rows[0].generator.epsilon == 0.10);
  CHECK(t9.rows[0].generator.beta1 == std::vector<double>{1.0, 1.5});
  CHECK(t9.rows[3].c == doctest::Approx(0.03));
}

TEST_CASE("run_plan fills detection columns and standard errors") {
  experiment_table table = run_plan(tiny_shift_plan());
  CHECK(table.name == "tiny");
  CHECK(table.seed == 5);
  REQUIRE(table.cells.size() == 1);
  const experiment_cell& cell = table.cells[0];
  CHECK(cell.scenario == "h=2.0");
  CHECK(cell.n == 200);
  CHECK(cell.trials == 60);
  CHECK(cell.c == 0.09);
  CHECK(cell.error.empty());
  CHECK(cell.w2 >= 0.0);
  CHECK(cell.w2 <= 1.0);
  CHECK(std::isfinite(cell.w2_se));
  CHECK(cell.epsilon_hat == doctest::Approx(0.1).epsilon(0.6));
  CHECK(std::isnan(cell.k_error));
}

TEST_CASE("run_plan is reproducible and worker-count independent") {
  experiment_plan plan = tiny_shift_plan();
  setenv("REGIME_SPLIT_THREADS", "1", 1);
  std::string serial = to_csv(run_plan(plan));
  setenv("REGIME_SPLIT_THREADS", "7", 1);
  std::string threaded = to_csv(run_plan(plan));
  unsetenv("REGIME_SPLIT_THREADS");
  std::string fresh = to_csv(run_plan(plan));
  CHECK(serial == threaded);
  CHECK(serial == fresh);
}

TEST_CASE("a failing row is reported in place without aborting the table") {
  experiment_plan plan = tiny_shift_plan();
  experiment_row broken = plan.rows[0];
  broken.generator.epsilon = 1.7;
  plan.rows.insert(plan.rows.begin(), broken);
  experiment_table table = run_plan(plan);
  REQUIRE(table.cells.size() == 2);
  CHECK_FALSE(table.cells[0].error.empty());
  CHECK(table.cells[1].error.empty());
  CHECK(std::isnan(table.cells[0].w2));
}

TEST_CASE("calibration rows produce a threshold with a standard error") {
  experiment_plan plan;
  plan.name = "cal";
  plan.seed = 2;
  experiment_row row;
  row.mode = experiment_row::mode_t::calibrate_symmetric;
  row.scenario = "alpha=0.95";
  row.generator.n = 120;
  row.trials = 300;
  row.alpha = 0.95;
  plan.rows.push_back(row);
  experiment_table table = run_plan(plan);
  REQUIRE(table.cells.size() == 1);
  CHECK(table.cells[0].c > 0.0);
  CHECK(table.cells[0].c_se > 0.0);
  CHECK(std::isnan(table.cells[0].w2));
}

TEST_CASE("multiclass rows report the k error rate") {
  experiment_plan plan;
  plan.name = "mc";
  plan.seed = 3;
  experiment_row row;
  row.mode = experiment_row::mode_t::multiclass;
  row.scenario = "h=(1;3;7)";
  row.generator.kind = generator_spec::kind_t::multiclass_mixture;
  row.generator.n = 700;
  row.generator.epsilons = {0.3, 0.15};
  row.generator.shifts = {1.0, 3.0, 7.0};
  row.trials = 40;
  row.b_max = 2.0;
  row.true_k = 2;
  plan.rows.push_back(row);
  plan.calibration_trials = 800;
  experiment_table table = run_plan(plan);
  REQUIRE(table.cells.size() == 1);
  CHECK(std::isfinite(table.cells[0].k_error));
  CHECK(table.cells[0].k_error <= 0.2);
  CHECK(std::isnan(table.cells[0].w2));
}
