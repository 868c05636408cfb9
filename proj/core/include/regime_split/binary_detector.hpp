#pragma once

#include "regime_split/theory_bounds.hpp"
#include "regime_split/types.hpp"

namespace regime_split {

// Band shrink factor for the variance pipeline: phi(b) = 1 - b / (e^b - 1).
// Equals the mean of a unit exponential truncated to [0, b], so the lower
// band edge theta * (1 - phi(b)) balances the upper edge theta * (1 + b)
// under the null. Increasing, phi(0) = 0, phi(b) -> 1 as b -> infinity.
double variance_band_phi(double b);

// Smallest b with variance_band_phi(b) = target, for target in [0, 1).
double variance_band_phi_inverse(double target);

// One-sample switch tests. The threshold c must already be resolved
// (see resolve_threshold); cfg.threshold only records its provenance.
// The sample is rejected (switches = true) when the scan maximum J
// exceeds c.
//
// detect_symmetric   centers a symmetric band on the sample mean;
//                    ordinary iff |x - mean| < b. Reports epsilon_hat
//                    (abnormal fraction at b*) and h_hat = mean / epsilon_hat.
// detect_asymmetric  centers values on the sample mean and uses the band
//                    [-phi(b), b] with cfg.phi supplied by the caller
//                    (nondecreasing, nonnegative); boundary points are
//                    ordinary. Reports epsilon_hat only.
// detect_variance_contamination
//                    squares deviations from the sample mean and bands the
//                    squares by [theta (1 - phi(b)), theta (1 + b)] around
//                    their mean theta, with the built-in variance_band_phi;
//                    boundary points are ordinary. Reports epsilon_hat only.
//                    The partition in the report lives on the squared scale.
//
// An empty cfg.b_grid selects the exact breakpoint scan (every band
// where the partition changes); a nonempty grid evaluates exactly those
// half-widths. cfg.b_max > 0 caps the breakpoint scan.
detection_report detect_symmetric(const sample& s, const detection_config& cfg, double c);
detection_report detect_asymmetric(const sample& s, const detection_config& cfg, double c);
detection_report detect_variance_contamination(const sample& s, const detection_config& cfg,
                                               double c);

// Dispatches on cfg.variant.
detection_report detect(const sample& s, const detection_config& cfg, double c);

// Solves the two-equation system
//   theta = epsilon * h
//   (1 - eps) [f0(t + b*) - f0(t - b*)] = eps [f0(t - b* - h) - f0(t + b* - h)]
// for epsilon in (1e-6, 0.5], where t = theta and f0 is the ordinary
// density. Requires b_star > 0 and a nonzero density difference across the
// band edges (a symmetric f0 with theta = 0 makes the system singular).
mixture_estimate consistent_estimates(double theta, double b_star, const density& f0);

}  // namespace regime_split
