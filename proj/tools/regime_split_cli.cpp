#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "regime_split/binary_detector.hpp"
#include "regime_split/errors.hpp"
#include "regime_split/experiment_harness.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/io.hpp"
#include "regime_split/multiclass_detector.hpp"
#include "regime_split/multivariate_detector.hpp"
#include "regime_split/split_statistic.hpp"
#include "regime_split/switching_regression.hpp"
#include "regime_split/threshold_calibration.hpp"

namespace rs = regime_split;

namespace {

int exit_code_for(rs::errc code) {
  switch (code) {
    case rs::errc::parse_error:
    case rs::errc::invalid_spec:
    case rs::errc::unknown_preset:
      return 2;
    case rs::errc::io_error:
      return 3;
    default:
      return 4;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = text.find(',', start);
    out.push_back(text.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) {
      break;
    }
    start = p + 1;
  }
  return out;
}

// fixed:<C> | formula:<sigma,rho,alpha> | mc:<calibration.json>
double threshold_from_arg(const std::string& text, std::size_t n) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw rs::error(rs::errc::parse_error,
                    "--threshold must be fixed:<C>, formula:<sigma,rho,alpha>, or mc:<file>");
  }
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  rs::threshold_spec spec;
  if (kind == "fixed") {
    spec = rs::threshold_spec::fixed(rs::parse_double(rest));
  } else if (kind == "formula") {
    std::vector<std::string> parts = split_list(rest);
    if (parts.size() != 3) {
      throw rs::error(rs::errc::parse_error, "formula threshold needs sigma,rho,alpha");
    }
    spec = rs::threshold_spec::formula(rs::parse_double(parts[0]), rs::parse_double(parts[1]),
                                       rs::parse_double(parts[2]));
  } else if (kind == "mc") {
    rs::calibration_result cal = rs::calibration_from_json(rs::read_text_file(rest));
    spec = rs::threshold_spec::monte_carlo(cal.alpha, cal.trials, cal.seed);
    spec.c = cal.c;
  } else {
    throw rs::error(rs::errc::parse_error, "unknown threshold kind '" + kind + "'");
  }
  return rs::resolve_threshold(spec, n);
}

struct simulate_args {
  std::string spec_path;
  std::string out_path;
  std::string labels_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_simulate(const simulate_args& a) {
  rs::generator_spec spec = rs::generator_from_file(a.spec_path);
  if (a.seed_set) {
    spec.seed = a.seed;
  }
  rs::generated_data data = rs::generate(spec);
  rs::write_data_csv(a.out_path, data);
  if (!a.labels_path.empty()) {
    rs::write_labels_csv(a.labels_path, data.labels);
  }
  return 0;
}

struct calibrate_args {
  std::string model_path;
  std::string out_path;
  std::string variant = "location";
  double alpha = 0.95;
  int trials = 5000;
  std::uint64_t seed = 1;
  double b_max = 0.0;
};

int run_calibrate(const calibrate_args& a) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) {
    std::cerr << "calibrate: --alpha must lie in (0, 1)\n";
    return 2;
  }
  if (a.trials < 100) {
    std::cerr << "calibrate: --trials must be at least 100\n";
    return 2;
  }
  rs::generator_spec model = rs::generator_from_file(a.model_path);
  std::function<double(const rs::generated_data&)> j_stat;
  if (a.variant == "location") {
    double cap = a.b_max;
    j_stat = [cap](const rs::generated_data& d) {
      return rs::breakpoint_scan(d.values, rs::sample_mean(d.values), cap).j;
    };
  } else {
    rs::detection_config cfg;
    cfg.variant = rs::detection_config::variant_t::variance_contamination;
    cfg.b_max = a.b_max;
    j_stat = [cfg](const rs::generated_data& d) {
      return rs::detect_variance_contamination(d.values, cfg, 1.0).j;
    };
  }
  rs::calibration_result result = rs::mc_calibrate(model, j_stat, a.alpha, a.trials, a.seed);
  rs::write_text_file(a.out_path, rs::to_json(result));
  return 0;
}

struct detect_args {
  std::string data_path;
  std::string out_path;
  std::string mode;
  std::string threshold;
  double b_max = 0.0;
  int max_classes = 16;
  int n_min = 20;
};

int run_detect(const detect_args& a) {
  rs::detection_config cfg;
  cfg.b_max = a.b_max;
  cfg.n_min = a.n_min;
  std::string out;
  if (a.mode == "multivariate") {
    rs::vector_sample vs = rs::read_vectors_csv(a.data_path);
    double c = threshold_from_arg(a.threshold, vs.size());
    out = rs::to_json(rs::detect_multivariate(vs, cfg, c));
  } else if (a.mode == "regression") {
    rs::regression_data data = rs::read_regression_csv(a.data_path);
    double c = threshold_from_arg(a.threshold, data.size());
    out = rs::to_json(rs::detect_switching_regression(data, cfg, c));
  } else {
    rs::sample x = rs::read_values_csv(a.data_path);
    double c = threshold_from_arg(a.threshold, x.size());
    if (a.mode == "binary") {
      out = rs::to_json(rs::detect_symmetric(x, cfg, c));
    } else if (a.mode == "variance") {
      cfg.variant = rs::detection_config::variant_t::variance_contamination;
      out = rs::to_json(rs::detect_variance_contamination(x, cfg, c));
    } else {
      out = rs::to_json(rs::detect_multiclass(x, cfg, c, a.max_classes));
    }
  }
  rs::write_text_file(a.out_path, out);
  return 0;
}

struct experiment_args {
  std::string preset_name;
  std::string plan_path;
  std::string out_path;
  std::string json_path;
  int replications = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_experiment(const experiment_args& a) {
  rs::experiment_plan plan =
      a.preset_name.empty() ? rs::plan_from_file(a.plan_path) : rs::preset(a.preset_name);
  if (a.seed_set) {
    plan.seed = a.seed;
  }
  if (a.replications > 0) {
    for (rs::experiment_row& row : plan.rows) {
      row.trials = a.replications;
    }
  }
  rs::experiment_table table = rs::run_plan(plan);
  rs::write_text_file(a.out_path, rs::to_csv(table));
  if (!a.json_path.empty()) {
    rs::write_text_file(a.json_path, rs::to_json(table));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrospective switch detection via sample splitting"};
  app.require_subcommand(1);

  simulate_args sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Draw a synthetic sample from a spec file");
  simulate->add_option("--spec", sim.spec_path, "generator spec (key=value file)")->required();
  simulate->add_option("--out", sim.out_path, "output data CSV")->required();
  simulate->add_option("--labels", sim.labels_path, "optional class-label CSV");
  CLI::Option* sim_seed = simulate->add_option("--seed", sim.seed, "override the spec seed");

  calibrate_args cal;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Monte Carlo threshold from a switch-free model");
  calibrate->add_option("--model", cal.model_path, "null-model generator spec")->required();
  calibrate->add_option("--alpha", cal.alpha, "confidence level in (0,1)");
  calibrate->add_option("--trials", cal.trials, "Monte Carlo replications");
  calibrate->add_option("--seed", cal.seed, "RNG seed");
  calibrate->add_option("--variant", cal.variant, "statistic family")
      ->check(CLI::IsMember({"location", "variance"}));
  calibrate->add_option("--b-max", cal.b_max, "cap on the band half-width");
  calibrate->add_option("--out", cal.out_path, "output calibration JSON")->required();

  detect_args det;
  CLI::App* detect = app.add_subcommand("detect", "Run switch detection on a data CSV");
  detect->add_option("--data", det.data_path, "input CSV")->required();
  detect->add_option("--mode", det.mode, "detection pipeline")
      ->check(CLI::IsMember({"binary", "variance", "multiclass", "multivariate", "regression"}))
      ->required();
  detect
      ->add_option("--threshold", det.threshold,
                   "fixed:<C> | formula:<sigma,rho,alpha> | mc:<calibration.json>")
      ->required();
  detect->add_option("--b-max", det.b_max, "cap on the band half-width");
  detect->add_option("--max-classes", det.max_classes, "peeling cap for multiclass mode");
  detect->add_option("--n-min", det.n_min, "minimum sample size the detector accepts");
  detect->add_option("--out", det.out_path, "output report JSON")->required();

  experiment_args exp;
  CLI::App* experiment = app.add_subcommand("experiment", "Run a Monte Carlo study to CSV");
  CLI::Option* exp_preset =
      experiment->add_option("--preset", exp.preset_name, "built-in study (table1..table9)");
  CLI::Option* exp_plan = experiment->add_option("--plan", exp.plan_path, "plan file");
  exp_preset->excludes(exp_plan);
  experiment->add_option("--replications", exp.replications, "override trials per row");
  CLI::Option* exp_seed = experiment->add_option("--seed", exp.seed, "override the plan seed");
  experiment->add_option("--out", exp.out_path, "output table CSV")->required();
  experiment->add_option("--json", exp.json_path, "also write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      sim.seed_set = sim_seed->count() > 0;
      return run_simulate(sim);
    }
    if (calibrate->parsed()) {
      return run_calibrate(cal);
    }
    if (detect->parsed()) {
      return run_detect(det);
    }
    exp.seed_set = exp_seed->count() > 0;
    if (exp.preset_name.empty() && exp.plan_path.empty()) {
      std::cerr << "experiment: either --preset or --plan is required\n";
      return 2;
    }
    return run_experiment(exp);
  } catch (const rs::error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 4;
  }
}
