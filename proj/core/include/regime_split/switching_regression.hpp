#pragma once

#include "regime_split/types.hpp"

namespace regime_split {

// Ordinary least squares; throws rank_deficient when the design has
// linearly dependent columns.
ols_result ols(const regression_data& d);

// Per-observation track for coefficient j that turns a coefficient switch
// into a location mixture.
//
// Influence form (rescaled = false):
//   t_i = bhat_j + N [(X'X)^{-1} x_i]_j r_i
// spreads the fitted coefficient by each observation's leverage-weighted
// residual. Rescaled form (rescaled = true) divides the influence term by
// m_ij = N [(X'X)^{-1} x_i]_j x_ij, collapsing to bhat_j + r_i / x_ij;
// its abnormal fraction estimates the switch probability without the
// leverage distortion. Observations with m_ij = 0 keep the influence
// value.
sample coefficient_sequence(const regression_data& d, std::size_t j, bool rescaled = false);

// Runs the symmetric band detector on every coefficient's influence
// track. A coefficient switches when its track rejects at threshold c;
// the influence scan also supplies j, b*, and the partition in
// per_coefficient. A rejecting coefficient's epsilon_hat is replaced by
// the abnormal fraction of its rescaled track, which is the consistent
// estimate of the switch probability; the top-level epsilon_hat copies
// the strongest (largest-statistic) rejecting coefficient's value.
regression_switch_report detect_switching_regression(const regression_data& d,
                                                     const detection_config& cfg, double c);

}  // namespace regime_split
