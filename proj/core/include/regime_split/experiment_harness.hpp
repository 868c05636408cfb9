#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "regime_split/types.hpp"

namespace regime_split {

// One table cell: either a null-quantile calibration or a batch of
// detection trials on a fixed synthetic scenario.
struct experiment_row {
  enum class mode_t {
    calibrate_symmetric,   // alpha-quantile of the null symmetric-scan maximum
    calibrate_variance,    // same for the variance-contamination pipeline
    detect_shift,          // shift mixture: w2 and mean epsilon_hat
    detect_variance,       // variance mixture: w2 and mean epsilon_hat
    multiclass,            // univariate peeling: P{k_hat != true_k}
    multiclass_norms,      // vector data reduced to norms, then peeling
    regression,            // switching regression read on one coefficient
  };

  mode_t mode = mode_t::detect_shift;
  std::string scenario;
  generator_spec generator;  // detection recipe, or the null base for calibration
  int trials = 2000;
  double c = 0.0;      // detection threshold (as printed in the source tables)
  double alpha = 0.95;  // calibration rows
  double b_max = 0.0;   // scan cap; 0 = unbounded
  int true_k = 0;       // multiclass rows: expected number of peeled classes
  int coefficient = 1;  // regression rows: which coefficient the table reads
};

struct experiment_plan {
  std::string name;
  std::uint64_t seed = 1;
  std::vector<experiment_row> rows;

  // Multiclass step thresholds are calibrated once per (mode, cap) pair
  // from these settings.
  std::vector<std::size_t> calibration_sizes = {50, 70, 100, 150, 220, 320, 470, 700, 1000, 1500};
  int calibration_trials = 4000;
  std::uint64_t calibration_seed = 777;
  double calibration_alpha0 = 0.9975;
  double calibration_ratio = 0.5;
  int max_classes = 8;
};

// One computed cell. Unused columns stay NaN; a failed cell records the
// error text and leaves its numbers NaN.
struct experiment_cell {
  std::string scenario;
  std::size_t n = 0;
  int trials = 0;
  double c = std::numeric_limits<double>::quiet_NaN();
  double c_se = std::numeric_limits<double>::quiet_NaN();
  double w2 = std::numeric_limits<double>::quiet_NaN();
  double w2_se = std::numeric_limits<double>::quiet_NaN();
  double epsilon_hat = std::numeric_limits<double>::quiet_NaN();
  double epsilon_se = std::numeric_limits<double>::quiet_NaN();
  double k_error = std::numeric_limits<double>::quiet_NaN();
  double k_error_se = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

struct experiment_table {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<experiment_cell> cells;
};

// Runs every row. Trials parallelize across workers into per-trial slots
// and aggregate in trial order, so the table is identical for any worker
// count. Per-trial seeds derive from (plan.seed, row index, trial), never
// from run order. A throwing cell records its error and the run
// continues (w2 = acceptance frequency; epsilon_hat averages rejecting
// trials only).
experiment_table run_plan(const experiment_plan& plan);

// Built-in desk-scale reproductions, names "table1" through "table9".
// Throws unknown_preset otherwise.
experiment_plan preset(const std::string& name);

}  // namespace regime_split
