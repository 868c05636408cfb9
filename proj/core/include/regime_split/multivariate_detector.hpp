#pragma once

#include "regime_split/types.hpp"

namespace regime_split {

// Euclidean norm of every observation; feeding these to the univariate
// detectors handles radially separated vector classes.
sample norms(const vector_sample& vs);

// Vector analogue of the exact band scan: the ball |v - center| < b is
// ordinary, Psi(b) is the vector sum of ordinary deviations from the
// sample mean over N, and the scan maximizes the Euclidean norm |Psi(b)|
// over the breakpoint radii. Ties resolve to the smallest b.
vector_scan_result breakpoint_scan_vector(const vector_sample& vs,
                                          const std::vector<double>& center,
                                          double b_max = 0.0);

// Binary switch test for vector samples, centered on the sample mean
// vector. Rejects when max |Psi| exceeds c; reports epsilon_hat (abnormal
// fraction at b*) and the shift estimate a_hat = mean / epsilon_hat.
// The report's scan stores |Psi(b)| per band and the partition classifies
// by distance from the mean (partition center is not meaningful for
// vector data and stays 0). With dim == 1 the decision, b*, and estimates
// match detect_symmetric exactly.
detection_report detect_multivariate(const vector_sample& vs, const detection_config& cfg,
                                     double c);

}  // namespace regime_split
