#include "regime_split/types.hpp"

#include <cmath>

namespace regime_split {

sample validate_sample(sample values) {
  if (values.empty()) {
    throw error(errc::empty_sample, "sample has no observations");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw error(errc::non_finite_value, "sample entry is not finite", i + 1);
    }
  }
  return values;
}

vector_sample validate_vector_sample(vector_sample vs) {
  if (vs.dim == 0) {
    throw error(errc::dimension_mismatch, "vector sample dimension must be >= 1");
  }
  if (vs.data.empty()) {
    throw error(errc::empty_sample, "vector sample has no observations");
  }
  if (vs.data.size() % vs.dim != 0) {
    throw error(errc::dimension_mismatch, "data length is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < vs.data.size(); ++i) {
    if (!std::isfinite(vs.data[i])) {
      throw error(errc::non_finite_value, "vector entry is not finite", i / vs.dim + 1);
    }
  }
  return vs;
}

threshold_spec threshold_spec::fixed(double c) {
  if (!(c > 0.0)) {
    throw error(errc::domain_error, "fixed threshold must be positive");
  }
  threshold_spec spec;
  spec.kind = kind_t::fixed;
  spec.c = c;
  return spec;
}

threshold_spec threshold_spec::formula(double sigma, double rho, double alpha) {
  threshold_spec spec;
  spec.kind = kind_t::formula;
  spec.sigma = sigma;
  spec.rho = rho;
  spec.alpha = alpha;
  return spec;
}

threshold_spec threshold_spec::monte_carlo(double alpha, int trials, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw error(errc::domain_error, "alpha must lie in (0,1)");
  }
  if (trials < 100) {
    throw error(errc::domain_error, "monte carlo calibration needs at least 100 trials");
  }
  threshold_spec spec;
  spec.kind = kind_t::monte_carlo;
  spec.alpha = alpha;
  spec.trials = trials;
  spec.seed = seed;
  return spec;
}

const char* termination_name(multiclass_report::termination_t t) noexcept {
  switch (t) {
    case multiclass_report::termination_t::accepted: return "accepted";
    case multiclass_report::termination_t::sample_exhausted: return "sample_exhausted";
    case multiclass_report::termination_t::max_classes_reached: return "max_classes_reached";
    case multiclass_report::termination_t::no_shrink: return "no_shrink";
  }
  return "unknown";
}

}  // namespace regime_split
