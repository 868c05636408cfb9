#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "json.hpp"

#include "regime_split/binary_detector.hpp"
#include "regime_split/errors.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/io.hpp"

using namespace regime_split;

namespace {

// Every test file lives under the system temp directory and is removed
// by the fixture.
struct temp_file {
  std::string path;
  explicit temp_file(const std::string& name) {
    path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/rs_io_" + name;
  }
  ~temp_file() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("doubles survive the shortest round trip") {
  for (double v : {0.1, -3.5, 1.0 / 3.0, 1e-17, 12345.6789, 0.0, -0.0, 5e300}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(parse_double(" 2.5 ") == 2.5);
}

TEST_CASE("parse_double rejects junk") {
  CHECK_THROWS_AS(parse_double("abc"), error);
  CHECK_THROWS_AS(parse_double("1.2.3"), error);
  CHECK_THROWS_AS(parse_double(""), error);
  CHECK_THROWS_AS(parse_double("1.5 beta"), error);
}

TEST_CASE("values CSV round trip is exact") {
  temp_file f("values.csv");
  sample original = {0.1, -2.5, 1.0 / 3.0, 1e-15};
  write_values_csv(f.path, original);
  CHECK(read_values_csv(f.path) == original);
}

TEST_CASE("vector CSV round trip keeps dimensions") {
  temp_file f("vectors.csv");
  vector_sample vs;
  vs.dim = 3;
  vs.data = {1.0, 2.0, 3.0, -0.5, 0.25, 1e-8};
  write_vectors_csv(f.path, vs);
  vector_sample back = read_vectors_csv(f.path);
  CHECK(back.dim == 3);
  CHECK(back.data == vs.data);
}

TEST_CASE("regression CSV round trip keeps both blocks") {
  temp_file f("regression.csv");
  regression_data d;
  d.k = 2;
  d.x = {1.0, 1.0, 1.0, 2.0, 1.0, 3.0};
  d.y = {0.5, 1.5, 2.5};
  write_regression_csv(f.path, d);
  regression_data back = read_regression_csv(f.path);
  CHECK(back.k == 2);
  CHECK(back.x == d.x);
  CHECK(back.y == d.y);
}

TEST_CASE("labels CSV lists one class per row") {
  temp_file f("labels.csv");
  write_labels_csv(f.path, {0, 1, 2});
  std::string text = read_text_file(f.path);
  CHECK(text == "index,label\n1,0\n2,1\n3,2\n");
}

TEST_CASE("CSV readers validate structure") {
  temp_file f("bad.csv");
  CHECK_THROWS_AS(read_values_csv("/nonexistent/path.csv"), error);

  write_text_file(f.path, "");
  CHECK_THROWS_AS(read_values_csv(f.path), error);

  write_text_file(f.path, "foo,bar\n1,2\n");
  CHECK_THROWS_AS(read_values_csv(f.path), error);

  write_text_file(f.path, "index,value\n1,2,3\n");
  CHECK_THROWS_AS(read_values_csv(f.path), error);

  write_text_file(f.path, "index,y\n1,2\n");
  CHECK_THROWS_AS(read_regression_csv(f.path), error);
}

TEST_CASE("generator specs parse from key=value text") {
  temp_file f("spec.txt");
  write_text_file(f.path,
                  "# three-class blend\n"
                  "kind = multiclass_mixture\n"
                  "n = 500\n"
                  "seed = 11\n"
                  "epsilons = 0.3, 0.15\n"
                  "shifts = 1, 3, 7\n");
  generator_spec g = generator_from_file(f.path);
  CHECK(g.kind == generator_spec::kind_t::multiclass_mixture);
  CHECK(g.n == 500);
  CHECK(g.seed == 11);
  CHECK(g.epsilons == std::vector<double>{0.3, 0.15});
  CHECK(g.shifts == std::vector<double>{1.0, 3.0, 7.0});

  write_text_file(f.path, "kind = shift_mixture\nwobble = 3\n");
  CHECK_THROWS_AS(generator_from_file(f.path), error);

  write_text_file(f.path, "kind = time_machine\n");
  CHECK_THROWS_AS(generator_from_file(f.path), error);

  write_text_file(f.path, "kind shift_mixture\n");
  CHECK_THROWS_AS(generator_from_file(f.path), error);
}

TEST_CASE("plans parse rows and shared settings") {
  temp_file f("plan.txt");
  write_text_file(f.path,
                  "name = demo\n"
                  "seed = 4\n"
                  "max_classes = 6\n"
                  "[row]\n"
                  "mode = detect_shift\n"
                  "scenario = h=2.0\n"
                  "kind = shift_mixture\n"
                  "n = 300\n"
                  "epsilon = 0.1\n"
                  "h = 2.0\n"
                  "c = 0.0710\n"
                  "trials = 50\n"
                  "[row]\n"
                  "mode = multiclass_norms\n"
                  "scenario = planes\n"
                  "kind = mv_gaussian_mixture\n"
                  "n = 400\n"
                  "dim = 2\n"
                  "covariance = 1, 0, 0, 1\n"
                  "epsilons = 0.2\n"
                  "shift_vectors = 0,0; 2,3\n"
                  "true_k = 1\n"
                  "b_max = 1.5\n");
  experiment_plan plan = plan_from_file(f.path);
  CHECK(plan.name == "demo");
  CHECK(plan.seed == 4);
  CHECK(plan.max_classes == 6);
  REQUIRE(plan.rows.size() == 2);
  CHECK(plan.rows[0].mode == experiment_row::mode_t::detect_shift);
  CHECK(plan.rows[0].c == doctest::Approx(0.0710));
  CHECK(plan.rows[1].generator.shift_vectors ==
        std::vector<std::vector<double>>{{0.0, 0.0}, {2.0, 3.0}});
  CHECK(plan.rows[1].true_k == 1);

  write_text_file(f.path, "name = empty\n");
  CHECK_THROWS_AS(plan_from_file(f.path), error);

  write_text_file(f.path, "[banana]\nmode = detect_shift\n");
  CHECK_THROWS_AS(plan_from_file(f.path), error);
}

TEST_CASE("calibration JSON round trips through the documented fields") {
  calibration_result r;
  r.method = "monte_carlo";
  r.c = 0.0381;
  r.alpha = 0.95;
  r.n = 1000;
  r.trials = 5000;
  r.seed = 99;
  r.c_se = 0.001;
  r.note = "quantile of the null statistic";
  std::string text = to_json(r);
  calibration_result back = calibration_from_json(text);
  CHECK(back.c == r.c);
  CHECK(back.alpha == r.alpha);
  CHECK(back.n == r.n);
  CHECK(back.trials == r.trials);
  CHECK(back.seed == r.seed);
  CHECK(back.method == r.method);

  CHECK_THROWS_AS(calibration_from_json("{}"), error);
  CHECK_THROWS_AS(calibration_from_json("not json"), error);
}

TEST_CASE("detection report JSON mirrors the type fields") {
  generator_spec g;
  g.n = 100;
  g.epsilon = 0.15;
  g.h = 4.0;
  g.seed = 21;
  detection_report rep = detect_symmetric(generate(g).values, detection_config{}, 0.05);
  nlohmann::json j = nlohmann::json::parse(to_json(rep));
  CHECK(j["switches"].is_boolean());
  CHECK(j["j"].get<double>() == rep.j);
  CHECK(j["c"].get<double>() == 0.05);
  CHECK(j["b_star"].get<double>() == rep.b_star);
  if (rep.epsilon_hat) {
    CHECK(j["epsilon_hat"].get<double>() == *rep.epsilon_hat);
  }
  CHECK(j["partition_at_b_star"]["n1"].get<std::size_t>() == rep.partition_at_b_star.n1());
  CHECK(j["scan"]["grid"].size() == rep.scan.grid.size());
  CHECK(j.contains("diagnostic"));
}

TEST_CASE("experiment table serializes to CSV with blank missing fields") {
  experiment_table t;
  t.name = "demo";
  t.seed = 1;
  experiment_cell cell;
  cell.scenario = "h=2.0";
  cell.n = 300;
  cell.trials = 100;
  cell.w2 = 0.25;
  cell.w2_se = 0.04;
  t.cells.push_back(cell);
  experiment_cell failed;
  failed.scenario = "broken";
  failed.n = 10;
  failed.trials = 5;
  failed.error = "InvalidSpec: epsilon, out of range";
  t.cells.push_back(failed);

  std::string csv = to_csv(t);
  CHECK(csv.find("scenario,n,trials,c,c_se,w2,w2_se,epsilon_hat,epsilon_se,"
                 "k_error,k_error_se,error\n") == 0);
  CHECK(csv.find("h=2.0,300,100,,,0.25,0.04,,,,,\n") != std::string::npos);
  // Commas inside the error text are flattened to keep the row width.
  CHECK(csv.find("InvalidSpec: epsilon  out of range") != std::string::npos);

  nlohmann::json j = nlohmann::json::parse(to_json(t));
  CHECK(j["name"] == "demo");
  REQUIRE(j["cells"].size() == 2);
  CHECK(j["cells"][0]["w2"].get<double>() == 0.25);
  // NaN cells serialize as null.
  CHECK(j["cells"][0]["k_error"].is_null());
}
