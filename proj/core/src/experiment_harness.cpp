#include "regime_split/experiment_harness.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

#include "regime_split/errors.hpp"

#include "regime_split/binary_detector.hpp"
#include "regime_split/generators.hpp"
#include "regime_split/multiclass_detector.hpp"
#include "regime_split/multivariate_detector.hpp"
#include "regime_split/parallel.hpp"
#include "regime_split/rng.hpp"
#include "regime_split/split_statistic.hpp"
#include "regime_split/switching_regression.hpp"
#include "regime_split/threshold_calibration.hpp"

namespace regime_split {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

double binomial_se(double p, int n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct trial_outcome {
  bool rejected = false;
  double epsilon = nan_value;
};

// w2 is the acceptance frequency; epsilon_hat averages rejecting trials.
void aggregate_detection(experiment_cell& cell, const std::vector<trial_outcome>& outcomes) {
  int r = static_cast<int>(outcomes.size());
  int rejections = 0;
  double sum = 0.0;
  int with_eps = 0;
  for (const auto& o : outcomes) {
    if (o.rejected) {
      ++rejections;
      if (std::isfinite(o.epsilon)) {
        sum += o.epsilon;
        ++with_eps;
      }
    }
  }
  cell.w2 = 1.0 - static_cast<double>(rejections) / r;
  cell.w2_se = binomial_se(cell.w2, r);
  if (with_eps > 0) {
    double mean = sum / with_eps;
    cell.epsilon_hat = mean;
    double ss = 0.0;
    for (const auto& o : outcomes) {
      if (o.rejected && std::isfinite(o.epsilon)) {
        ss += (o.epsilon - mean) * (o.epsilon - mean);
      }
    }
    cell.epsilon_se = with_eps > 1
                          ? std::sqrt(ss / (with_eps - 1) / with_eps)
                          : nan_value;
  }
}

void run_calibration_row(const experiment_row& row, std::uint64_t row_seed,
                         experiment_cell& cell) {
  std::function<double(const generated_data&)> j_stat;
  if (row.mode == experiment_row::mode_t::calibrate_symmetric) {
    double cap = row.b_max;
    j_stat = [cap](const generated_data& g) {
      return breakpoint_scan(g.values, sample_mean(g.values), cap).j;
    };
  } else {
    detection_config cfg;
    cfg.variant = detection_config::variant_t::variance_contamination;
    cfg.b_max = row.b_max;
    // The threshold argument only gates the switch flag; the row reads
    // the scan maximum.
    j_stat = [cfg](const generated_data& g) {
      return detect_variance_contamination(g.values, cfg, 1.0).j;
    };
  }
  calibration_result res = mc_calibrate(row.generator, j_stat, row.alpha, row.trials, row_seed);
  cell.c = res.c;
  cell.c_se = res.c_se;
}

void run_binary_row(const experiment_row& row, std::uint64_t row_seed,
                    experiment_cell& cell) {
  detection_config cfg;
  cfg.b_max = row.b_max;
  bool variance = row.mode == experiment_row::mode_t::detect_variance;
  if (variance) {
    cfg.variant = detection_config::variant_t::variance_contamination;
  }
  std::vector<trial_outcome> outcomes(row.trials);
  parallel_for(static_cast<std::size_t>(row.trials), [&](std::size_t t) {
    generator_spec g = row.generator;
    g.seed = mix_seed(row_seed, t);
    generated_data data = generate(g);
    detection_report rep = variance
                               ? detect_variance_contamination(data.values, cfg, row.c)
                               : detect_symmetric(data.values, cfg, row.c);
    outcomes[t] = {rep.switches, rep.epsilon_hat.value_or(nan_value)};
  });
  cell.c = row.c;
  aggregate_detection(cell, outcomes);
}

void run_multiclass_row(const experiment_row& row, std::uint64_t row_seed,
                        const experiment_plan& plan, const multiclass_threshold& thresholds,
                        experiment_cell& cell) {
  bool from_norms = row.mode == experiment_row::mode_t::multiclass_norms;
  detection_config cfg;
  cfg.b_max = row.b_max;
  std::vector<int> k_hat(row.trials);
  parallel_for(static_cast<std::size_t>(row.trials), [&](std::size_t t) {
    generator_spec g = row.generator;
    g.seed = mix_seed(row_seed, t);
    generated_data data = generate(g);
    sample x = from_norms ? norms(data.vectors) : std::move(data.values);
    k_hat[t] = detect_multiclass(x, cfg, thresholds, plan.max_classes).k_hat;
  });
  int wrong = 0;
  for (int k : k_hat) {
    if (k != row.true_k) {
      ++wrong;
    }
  }
  cell.k_error = static_cast<double>(wrong) / row.trials;
  cell.k_error_se = binomial_se(cell.k_error, row.trials);
}

void run_regression_row(const experiment_row& row, std::uint64_t row_seed,
                        experiment_cell& cell) {
  detection_config cfg;
  cfg.b_max = row.b_max;
  std::vector<trial_outcome> outcomes(row.trials);
  parallel_for(static_cast<std::size_t>(row.trials), [&](std::size_t t) {
    generator_spec g = row.generator;
    g.seed = mix_seed(row_seed, t);
    generated_data data = generate(g);
    regression_switch_report rep = detect_switching_regression(data.regression, cfg, row.c);
    const detection_report& coeff =
        rep.per_coefficient.at(static_cast<std::size_t>(row.coefficient));
    outcomes[t] = {coeff.switches, coeff.epsilon_hat.value_or(nan_value)};
  });
  cell.c = row.c;
  aggregate_detection(cell, outcomes);
}

}  // namespace

experiment_table run_plan(const experiment_plan& plan) {
  experiment_table table;
  table.name = plan.name;
  table.seed = plan.seed;
  table.cells.reserve(plan.rows.size());

  // Step-threshold tables are shared by every multiclass row with the
  // same null family and cap.
  std::map<std::pair<bool, double>, multiclass_threshold> calibrations;
  auto thresholds_for = [&](const experiment_row& row) -> const multiclass_threshold& {
    bool from_norms = row.mode == experiment_row::mode_t::multiclass_norms;
    auto key = std::make_pair(from_norms, row.b_max);
    auto it = calibrations.find(key);
    if (it != calibrations.end()) {
      return it->second;
    }
    std::function<sample(std::size_t, std::uint64_t)> null_sampler;
    if (from_norms) {
      generator_spec base = row.generator;
      base.epsilons.clear();
      base.shift_vectors.assign(1, std::vector<double>(base.dim, 0.0));
      null_sampler = [base](std::size_t n, std::uint64_t seed) {
        generator_spec g = base;
        g.n = n;
        g.seed = seed;
        return norms(generate(g).vectors);
      };
    } else {
      generator_spec base;
      base.kind = generator_spec::kind_t::shift_mixture;
      base.mu0 = row.generator.mu0;
      base.sigma0 = row.generator.sigma0;
      null_sampler = [base](std::size_t n, std::uint64_t seed) {
        generator_spec g = base;
        g.n = n;
        g.seed = seed;
        return generate(g).values;
      };
    }
    double cap = row.b_max;
    auto j_stat = [cap](const sample& x) {
      return breakpoint_scan(x, mode_estimate(x), cap).j;
    };
    multiclass_threshold mt = calibrate_multiclass_threshold(
        null_sampler, j_stat, plan.calibration_sizes, plan.calibration_alpha0,
        plan.calibration_ratio, plan.max_classes, plan.calibration_trials,
        plan.calibration_seed);
    return calibrations.emplace(key, std::move(mt)).first->second;
  };

  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    const experiment_row& row = plan.rows[i];
    experiment_cell cell;
    cell.scenario = row.scenario;
    cell.n = row.generator.n;
    cell.trials = row.trials;
    std::uint64_t row_seed = mix_seed(plan.seed, i);
    try {
      switch (row.mode) {
        case experiment_row::mode_t::calibrate_symmetric:
        case experiment_row::mode_t::calibrate_variance:
          run_calibration_row(row, row_seed, cell);
          break;
        case experiment_row::mode_t::detect_shift:
        case experiment_row::mode_t::detect_variance:
          run_binary_row(row, row_seed, cell);
          break;
        case experiment_row::mode_t::multiclass:
        case experiment_row::mode_t::multiclass_norms:
          run_multiclass_row(row, row_seed, plan, thresholds_for(row), cell);
          break;
        case experiment_row::mode_t::regression:
          run_regression_row(row, row_seed, cell);
          break;
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    table.cells.push_back(std::move(cell));
  }
  return table;
}

namespace {

generator_spec null_normal(std::size_t n) {
  generator_spec g;
  g.kind = generator_spec::kind_t::shift_mixture;
  g.n = n;
  return g;
}

experiment_row calibration_row(experiment_row::mode_t mode, std::size_t n, double alpha) {
  experiment_row row;
  row.mode = mode;
  row.scenario = "alpha=" + std::to_string(alpha).substr(0, 4);
  row.generator = null_normal(n);
  row.trials = 5000;
  row.alpha = alpha;
  return row;
}

experiment_row shift_row(std::size_t n, double c, double h) {
  experiment_row row;
  row.mode = experiment_row::mode_t::detect_shift;
  row.scenario = "h=" + std::to_string(h).substr(0, 3);
  row.generator.kind = generator_spec::kind_t::shift_mixture;
  row.generator.n = n;
  row.generator.epsilon = 0.1;
  row.generator.h = h;
  row.c = c;
  return row;
}

experiment_row variance_row(std::size_t n, double c, double lambda, double epsilon) {
  experiment_row row;
  row.mode = experiment_row::mode_t::detect_variance;
  row.scenario = "lambda=" + std::to_string(lambda).substr(0, 1);
  row.generator.kind = generator_spec::kind_t::variance_mixture;
  row.generator.n = n;
  row.generator.epsilon = epsilon;
  row.generator.lambda = lambda;
  row.c = c;
  row.b_max = lambda * lambda;
  return row;
}

experiment_row multiclass_row(std::size_t n) {
  experiment_row row;
  row.mode = experiment_row::mode_t::multiclass;
  row.scenario = "h=(1;3;7)";
  row.generator.kind = generator_spec::kind_t::multiclass_mixture;
  row.generator.n = n;
  row.generator.epsilons = {0.3, 0.15};
  row.generator.shifts = {1.0, 3.0, 7.0};
  row.trials = 1000;
  row.b_max = 2.0;
  row.true_k = 2;
  return row;
}

experiment_row multiclass_norms_row(std::size_t n) {
  experiment_row row;
  row.mode = experiment_row::mode_t::multiclass_norms;
  row.scenario = "2d 3-class";
  row.generator.kind = generator_spec::kind_t::mv_gaussian_mixture;
  row.generator.n = n;
  row.generator.dim = 2;
  row.generator.covariance = {0.745, -0.07, -0.07, 0.51};
  row.generator.epsilons = {0.3, 0.15};
  row.generator.shift_vectors = {{0.0, 0.0}, {1.0, 2.0}, {2.0, 3.0}};
  row.trials = 1000;
  row.b_max = std::sqrt(13.0) - std::sqrt(5.0);
  row.true_k = 2;
  return row;
}

experiment_row regression_row(std::size_t n, double c, double epsilon, double switched_slope) {
  experiment_row row;
  row.mode = experiment_row::mode_t::regression;
  row.scenario = "slope=" + std::to_string(switched_slope).substr(0, 3);
  row.generator.kind = generator_spec::kind_t::switching_regression;
  row.generator.n = n;
  row.generator.epsilon = epsilon;
  row.generator.beta0 = {1.0, 1.0};
  row.generator.beta1 = {1.0, switched_slope};
  row.c = c;
  row.coefficient = 1;
  return row;
}

}  // namespace

experiment_plan preset(const std::string& name) {
  experiment_plan plan;
  plan.name = name;
  const std::vector<std::size_t> quantile_ns = {50, 100, 300, 500, 800, 1000, 1200, 1500, 2000};

  if (name == "table1" || name == "table3") {
    auto mode = name == "table1" ? experiment_row::mode_t::calibrate_symmetric
                                 : experiment_row::mode_t::calibrate_variance;
    for (double alpha : {0.95, 0.99}) {
      for (std::size_t n : quantile_ns) {
        plan.rows.push_back(calibration_row(mode, n, alpha));
      }
    }
    return plan;
  }
  if (name == "table2") {
    plan.rows.push_back(shift_row(300, 0.0710, 2.0));
    plan.rows.push_back(shift_row(500, 0.0534, 2.0));
    plan.rows.push_back(shift_row(800, 0.044, 2.0));
    plan.rows.push_back(shift_row(1000, 0.038, 2.0));
    plan.rows.push_back(shift_row(800, 0.044, 1.5));
    plan.rows.push_back(shift_row(1200, 0.037, 1.5));
    plan.rows.push_back(shift_row(2000, 0.029, 1.5));
    plan.rows.push_back(shift_row(3000, 0.022, 1.5));
    return plan;
  }
  if (name == "table4") {
    plan.rows.push_back(variance_row(300, 0.1570, 3.0, 0.05));
    plan.rows.push_back(variance_row(500, 0.1419, 3.0, 0.05));
    plan.rows.push_back(variance_row(800, 0.1252, 3.0, 0.05));
    plan.rows.push_back(variance_row(1000, 0.1244, 3.0, 0.05));
    return plan;
  }
  if (name == "table5") {
    plan.rows.push_back(variance_row(1000, 0.1244, 5.0, 0.01));
    plan.rows.push_back(variance_row(1200, 0.1146, 5.0, 0.01));
    plan.rows.push_back(variance_row(1500, 0.1107, 5.0, 0.01));
    plan.rows.push_back(variance_row(2000, 0.1075, 5.0, 0.01));
    plan.rows.push_back(variance_row(3000, 0.1019, 5.0, 0.01));
    return plan;
  }
  if (name == "table6") {
    for (std::size_t n : {100, 200, 300, 500, 700, 1000, 1500}) {
      plan.rows.push_back(multiclass_row(n));
    }
    return plan;
  }
  if (name == "table7") {
    for (std::size_t n : {100, 200, 300, 500, 700, 1000, 1500}) {
      plan.rows.push_back(multiclass_norms_row(n));
    }
    return plan;
  }
  if (name == "table8" || name == "table9") {
    double eps = name == "table8" ? 0.05 : 0.10;
    double slope = name == "table8" ? 2.0 : 1.5;
    plan.rows.push_back(regression_row(300, 0.07, eps, slope));
    plan.rows.push_back(regression_row(500, 0.05, eps, slope));
    plan.rows.push_back(regression_row(800, 0.04, eps, slope));
    plan.rows.push_back(regression_row(1000, 0.03, eps, slope));
    return plan;
  }
  throw error(errc::unknown_preset, "no preset named '" + name + "'");
}

}  // namespace regime_split
