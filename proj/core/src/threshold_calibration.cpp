#include "regime_split/threshold_calibration.hpp"

#include <algorithm>
#include <cmath>

#include "regime_split/generators.hpp"
#include "regime_split/parallel.hpp"
#include "regime_split/rng.hpp"

namespace regime_split {

double formula_threshold(std::size_t n, double sigma, double rho, double alpha) {
  if (n < 1) {
    throw error(errc::domain_error, "sample size must be >= 1");
  }
  if (!(sigma > 0.0)) {
    throw error(errc::domain_error, "sigma must be positive");
  }
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw error(errc::domain_error, "rho must lie in [0,1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw error(errc::domain_error, "alpha must lie in (0,1)");
  }
  double log_c = -0.9490 - 0.4729 * std::log(static_cast<double>(n)) +
                 1.0627 * std::log(sigma) - 0.6502 * std::log1p(-rho) -
                 0.2545 * std::log1p(-alpha);
  return std::exp(log_c);
}

calibration_result mc_calibrate(const generator_spec& null_generator,
                                const std::function<double(const generated_data&)>& j_statistic,
                                double alpha, int trials, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw error(errc::domain_error, "alpha must lie in (0,1)");
  }
  if (trials < 100) {
    throw error(errc::domain_error, "monte carlo calibration needs at least 100 trials");
  }

  std::vector<double> pulls(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    generator_spec trial_spec = null_generator;
    trial_spec.seed = mix_seed(seed, t);
    pulls[t] = j_statistic(generate(trial_spec));
  });
  std::sort(pulls.begin(), pulls.end());

  auto order_stat = [&](long rank_1based) {
    long clamped = std::clamp(rank_1based, 1L, static_cast<long>(trials));
    return pulls[clamped - 1];
  };
  long rank = static_cast<long>(std::ceil(alpha * trials));
  double c = order_stat(rank);
  if (!(c > 0.0)) {
    throw error(errc::degenerate_calibration, "all null statistics are zero");
  }

  // Distribution-free quantile spread: order statistics two binomial
  // standard deviations of rank away bracket the quantile.
  long spread = static_cast<long>(std::ceil(2.0 * std::sqrt(trials * alpha * (1.0 - alpha))));
  double c_lo = order_stat(rank - spread);
  double c_hi = order_stat(rank + spread);

  calibration_result result;
  result.method = "mc_quantile";
  result.c = c;
  result.alpha = alpha;
  result.n = null_generator.n;
  result.trials = trials;
  result.seed = seed;
  result.c_se = (c_hi - c_lo) / 4.0;
  result.note =
      "empirical quantile of the null split statistic; the printed "
      "regression formula disagrees with published quantile tables "
      "(0.0316 vs 0.0380 at N=1000, alpha=0.95) and is not used here";
  return result;
}

multiclass_threshold calibrate_multiclass_threshold(
    const std::function<sample(std::size_t, std::uint64_t)>& null_sampler,
    const std::function<double(const sample&)>& j_statistic,
    const std::vector<std::size_t>& sizes, double alpha0, double ratio,
    int steps, int trials, std::uint64_t seed) {
  if (sizes.empty()) {
    throw error(errc::domain_error, "size grid must be nonempty");
  }
  if (!(alpha0 > 0.0 && alpha0 < 1.0) || !(ratio > 0.0 && ratio < 1.0)) {
    throw error(errc::domain_error, "alpha0 and ratio must lie in (0,1)");
  }
  if (steps < 1 || trials < 100) {
    throw error(errc::domain_error, "need steps >= 1 and trials >= 100");
  }

  std::vector<std::vector<double>> pulls(sizes.size());
  for (auto& v : pulls) {
    v.resize(trials);
  }
  parallel_for(sizes.size() * static_cast<std::size_t>(trials), [&](std::size_t idx) {
    std::size_t si = idx / trials;
    std::size_t t = idx % trials;
    sample s = null_sampler(sizes[si], mix_seed(seed + sizes[si], t));
    pulls[si][t] = j_statistic(s);
  });
  for (auto& v : pulls) {
    std::sort(v.begin(), v.end());
  }

  // Linear-interpolation quantile between adjacent order statistics.
  auto quantile = [&](const std::vector<double>& v, double q) {
    double pos = q * static_cast<double>(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) {
      return v.back();
    }
    double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
  };

  multiclass_threshold mt;
  mt.sizes = sizes;
  mt.alpha0 = alpha0;
  mt.ratio = ratio;
  mt.trials = trials;
  mt.seed = seed;
  mt.step_curves.resize(steps);
  double tail = 1.0 - alpha0;
  for (int j = 0; j < steps; ++j) {
    double level = 1.0 - tail;
    mt.step_curves[j].resize(sizes.size());
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      mt.step_curves[j][si] = quantile(pulls[si], level);
    }
    tail *= ratio;
  }
  return mt;
}

double multiclass_threshold::at(int step, std::size_t n) const {
  if (step_curves.empty() || sizes.empty()) {
    throw error(errc::invalid_spec, "multiclass threshold has no calibrated curves");
  }
  const auto& curve = step_curves[std::min<std::size_t>(step, step_curves.size() - 1)];
  double x = std::log(static_cast<double>(n));
  double x_lo = std::log(static_cast<double>(sizes.front()));
  double x_hi = std::log(static_cast<double>(sizes.back()));
  if (x <= x_lo) {
    return curve.front();
  }
  if (x >= x_hi) {
    return curve.back();
  }
  std::size_t hi = 1;
  while (hi < sizes.size() && std::log(static_cast<double>(sizes[hi])) < x) {
    ++hi;
  }
  double a = std::log(static_cast<double>(sizes[hi - 1]));
  double b = std::log(static_cast<double>(sizes[hi]));
  double frac = (x - a) / (b - a);
  return curve[hi - 1] + frac * (curve[hi] - curve[hi - 1]);
}

int estimate_phi0_acf(const sample& s) {
  std::size_t n = s.size();
  if (n < 30) {
    throw error(errc::sample_too_small, "ACF estimation needs at least 30 observations");
  }
  double mean = 0.0;
  for (double x : s) {
    mean += x;
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : s) {
    var += (x - mean) * (x - mean);
  }
  if (!(var > 0.0)) {
    throw error(errc::degenerate_variance, "constant sample has undefined autocorrelation");
  }
  double band = 1.96 / std::sqrt(static_cast<double>(n));
  for (std::size_t lag = 1; lag + 2 <= n; ++lag) {
    double cov = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) {
      cov += (s[i] - mean) * (s[i + lag] - mean);
    }
    if (cov / var <= band) {
      return static_cast<int>(lag);
    }
  }
  return static_cast<int>(n) - 2;  // profile never decays within the sample
}

double resolve_threshold(const threshold_spec& spec, std::size_t n) {
  switch (spec.kind) {
    case threshold_spec::kind_t::fixed:
      if (!(spec.c > 0.0)) {
        throw error(errc::domain_error, "fixed threshold must be positive");
      }
      return spec.c;
    case threshold_spec::kind_t::formula:
      return formula_threshold(n, spec.sigma, spec.rho, spec.alpha);
    case threshold_spec::kind_t::monte_carlo:
      if (!(spec.c > 0.0)) {
        throw error(errc::invalid_spec,
                    "monte carlo threshold must be calibrated before detection");
      }
      return spec.c;
  }
  throw error(errc::invalid_spec, "unknown threshold kind");
}

}  // namespace regime_split
