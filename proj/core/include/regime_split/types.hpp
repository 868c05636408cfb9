#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regime_split/errors.hpp"

namespace regime_split {

// Ordered univariate observations; every entry finite, size >= 1.
using sample = std::vector<double>;

// Checks finiteness and non-emptiness, returns the validated sample.
sample validate_sample(sample values);

// Row-major N x dim matrix of observations sharing a fixed dimension.
struct vector_sample {
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
  double* row(std::size_t i) { return data.data() + i * dim; }
};

vector_sample validate_vector_sample(vector_sample vs);

// Split of a sample at band half-width b around a reference point.
// Symmetric rule: ordinary iff |x - center| < b (boundary points are abnormal).
struct band_partition {
  double center = 0.0;
  double b = 0.0;
  std::vector<std::uint32_t> ordinary_indices;
  std::vector<std::uint32_t> abnormal_indices;

  std::size_t n1() const { return ordinary_indices.size(); }
  std::size_t n2() const { return abnormal_indices.size(); }
};

// One scan of the split statistic over a set of band half-widths.
// j = max |psi_values|; b_star = smallest grid value attaining j.
struct scan_result {
  std::vector<double> grid;
  std::vector<double> psi_values;
  double j = 0.0;
  double b_star = 0.0;
  std::size_t n2_at_b_star = 0;
};

// Vector-valued scan: psi_vectors holds one length-dim row per grid point,
// j = max Euclidean norm over the grid.
struct vector_scan_result {
  std::size_t dim = 0;
  std::vector<double> grid;
  std::vector<double> psi_vectors;
  double j = 0.0;
  double b_star = 0.0;
  std::size_t n2_at_b_star = 0;

  const double* psi_row(std::size_t i) const { return psi_vectors.data() + i * dim; }
};

// How the decision threshold C is obtained.
struct threshold_spec {
  enum class kind_t { fixed, formula, monte_carlo };

  kind_t kind = kind_t::fixed;
  double c = 0.0;          // fixed, or the calibrated value for monte_carlo
  double sigma = 1.0;      // formula
  double rho = 0.0;        // formula
  double alpha = 0.95;     // formula and monte_carlo
  int trials = 5000;       // monte_carlo
  std::uint64_t seed = 0;  // monte_carlo

  static threshold_spec fixed(double c);
  static threshold_spec formula(double sigma, double rho, double alpha);
  static threshold_spec monte_carlo(double alpha, int trials, std::uint64_t seed);
};

// Shared detector configuration. An empty b_grid selects the exact
// breakpoint scan; b_max = 0 leaves the scan unbounded.
struct detection_config {
  enum class variant_t { symmetric, asymmetric, variance_contamination };

  threshold_spec threshold;
  std::vector<double> b_grid;
  double b_max = 0.0;
  variant_t variant = variant_t::symmetric;
  int n_min = 20;
  // Multiclass peeling stops (accepting) once the working sample drops
  // below this size; recursion steps need more data than a single test.
  int min_step_n = 50;
  // Band shape for the asymmetric variant: lower edge -phi(b), upper edge b.
  std::function<double(double)> phi;
};

// Outcome of one binary detection.
struct detection_report {
  bool switches = false;
  double j = 0.0;
  double c = 0.0;
  double b_star = 0.0;
  std::optional<double> epsilon_hat;           // present iff switches
  std::optional<double> h_hat;                 // location pipelines only
  std::optional<std::vector<double>> a_hat;    // multivariate shift estimate
  band_partition partition_at_b_star;
  scan_result scan;
  std::string diagnostic;
};

// Parameter estimates for the binary mixture.
struct mixture_estimate {
  enum class method_t { nonparametric, consistent_system };

  double epsilon_hat = 0.0;
  double h_hat = 0.0;
  method_t method = method_t::nonparametric;
};

// Result of the recursive multiclass peeling.
// class_centers: reference point of every executed step (the accepting
// step's center, when present, locates the last remaining class).
// class_fractions: share of the ORIGINAL sample peeled at each rejecting
// step, so entries are comparable across steps and sum to at most 1.
struct multiclass_report {
  enum class termination_t { accepted, sample_exhausted, max_classes_reached, no_shrink };

  int k_hat = 0;
  std::vector<double> class_fractions;
  std::vector<double> class_centers;
  std::vector<detection_report> peel_trace;
  termination_t termination = termination_t::accepted;
};

const char* termination_name(multiclass_report::termination_t t) noexcept;

// Threshold calibration output; c_se is the quantile standard error
// (monte carlo method only).
struct calibration_result {
  std::string method;
  double c = 0.0;
  double alpha = 0.0;
  std::size_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double c_se = 0.0;
  std::string note;
};

// Per-step null-quantile curves for multiclass peeling: level(step j) =
// 1 - (1-alpha0) * ratio^j, one curve per step, interpolated in log(n)
// over the calibrated size grid.
struct multiclass_threshold {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<double>> step_curves;
  double alpha0 = 0.9975;
  double ratio = 0.5;
  int trials = 0;
  std::uint64_t seed = 0;

  double at(int step, std::size_t n) const;
};

// Regression observations: row-major N x k design plus response.
struct regression_data {
  std::size_t k = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return y.size(); }
  const double* row(std::size_t i) const { return x.data() + i * k; }
};

struct ols_result {
  std::vector<double> beta;
  std::vector<double> residuals;
};

struct regression_switch_report {
  std::vector<detection_report> per_coefficient;
  bool any_switch = false;
  // Rescaled-track estimate of the strongest coefficient; present iff
  // any_switch.
  std::optional<double> epsilon_hat;
  int strongest_coefficient = -1;  // 0-based, -1 when no rejection
};

// Synthetic-data recipe covering every model used by the experiments.
struct generator_spec {
  enum class kind_t {
    shift_mixture,
    variance_mixture,
    multiclass_mixture,
    ar1,
    mv_gaussian_mixture,
    switching_regression,
  };

  kind_t kind = kind_t::shift_mixture;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  double mu0 = 0.0;    // base-distribution location
  double sigma0 = 1.0; // base-distribution scale

  double epsilon = 0.0;  // shift/variance/regression mixing fraction
  double h = 0.0;        // shift_mixture offset
  double lambda = 1.0;   // variance_mixture abnormal scale

  // multiclass_mixture: shifts has one entry per class (class 0 first),
  // epsilons one entry per abnormal class.
  std::vector<double> epsilons;
  std::vector<double> shifts;

  double rho = 0.0;  // ar1 coefficient

  // mv_gaussian_mixture
  std::size_t dim = 0;
  std::vector<double> covariance;                  // row-major dim x dim
  std::vector<std::vector<double>> shift_vectors;  // one per class, class 0 first

  // switching_regression on the trend design x_i = (1, i)
  std::vector<double> beta0;
  std::vector<double> beta1;
  double noise_sigma = 1.0;
};

struct generated_data {
  sample values;
  vector_sample vectors;
  regression_data regression;
  std::vector<int> labels;  // class (0 = ordinary) or switch flag per row
};

}  // namespace regime_split
