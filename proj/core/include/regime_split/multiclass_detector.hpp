#pragma once

#include "regime_split/types.hpp"

namespace regime_split {

// Midpoint of the fullest of ceil(sqrt(n)) equal-width bins spanning the
// sample range; leftmost bin wins ties.
double histogram_mode(const sample& s);

// Mode estimate used by the peeling detector: bin counts are smoothed with
// a (1, 2, 1) kernel before the argmax, and the winning midpoint is
// refined once to the mean of the observations within one bin width.
double mode_estimate(const sample& s);

// Recursive class peeling. Each step centers a band scan on the current
// mode estimate; when the scan maximum exceeds the step threshold, the
// step removes the detected class and recurses on the remainder. The cut
// is radial: with b_cut the widest band that still exceeds the threshold,
// every point with |x| < |center| + b_cut leaves. That suits norm-like
// inputs whose classes sit at increasing distances from zero. Peeling
// stops on the first accepting step, when fewer than cfg.min_step_n
// observations remain, after max_classes rejections, or when a rejecting
// step fails to remove any point.
//
// k_hat counts the rejecting steps. class_centers records the scan center
// of every executed step, so an accepted run has k_hat + 1 entries and
// the last one locates the residual class. class_fractions is the share
// of the ORIGINAL sample removed by each rejecting step.
//
// The first overload applies one threshold c to every step; the second
// looks thresholds up per step and per remaining sample size.
multiclass_report detect_multiclass(const sample& s, const detection_config& cfg, double c,
                                    int max_classes = 16);
multiclass_report detect_multiclass(const sample& s, const detection_config& cfg,
                                    const multiclass_threshold& thresholds,
                                    int max_classes = 16);

}  // namespace regime_split
