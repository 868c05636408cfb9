#pragma once

#include "regime_split/types.hpp"

namespace regime_split {

// Throws invalid_spec (or dimension_mismatch) when the recipe is
// inconsistent; returns the spec unchanged otherwise.
const generator_spec& validate_generator_spec(const generator_spec& spec);

// Draws one synthetic data set. All kinds consume the stream in a fixed
// per-observation order (mixture label first, then the value draws), so a
// given (kind, n, seed) always yields the same data.
//
// shift_mixture         x = mu0 + sigma0 z + h [abnormal]
// variance_mixture      x = mu0 + sigma0 z, abnormal scale inflated to
//                       lambda sigma0
// multiclass_mixture    class j >= 1 with probability epsilons[j-1]
//                       (cumulative intervals in class order), x = mu0 +
//                       sigma0 z + shifts[class]
// ar1                   x_t = mu0 + rho (x_{t-1} - mu0) + sigma0 z_t after
//                       a 1000-step burn-in from x = mu0
// mv_gaussian_mixture   x = shift_vectors[class] + L z with L L' =
//                       covariance
// switching_regression  trend design x_i = (1, i) for i = 1..n,
//                       y_i = beta' x_i + noise_sigma z, beta = beta1 on
//                       switched rows (probability epsilon), beta0 else
//
// labels holds the class (0 = ordinary) or switch flag per observation.
generated_data generate(const generator_spec& spec);

}  // namespace regime_split
