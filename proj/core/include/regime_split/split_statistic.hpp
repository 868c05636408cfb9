#pragma once

#include <cstddef>
#include <vector>

#include "regime_split/types.hpp"

namespace regime_split {

double sample_mean(const sample& s);

// Symmetric band rule: ordinary iff |x - center| < b, abnormal otherwise
// (boundary points are abnormal).
band_partition partition_by_band(const sample& s, double center, double b);

// Split statistic Psi_N(b) = (n2 * sum_ordinary - n1 * sum_abnormal) / N^2.
double psi(const sample& s, const band_partition& p);

// Same value through the rearranged form (N * sum_ordinary - n1 * sum_all) / N^2;
// the two must agree to machine tolerance on every partition.
double psi_rearranged(const sample& s, const band_partition& p);

// Evaluates Psi_N over an explicit strictly increasing positive grid.
scan_result scan_grid(const sample& s, double center, const std::vector<double>& grid);

// Exact scan: Psi_N is piecewise constant between the distinct distances
// |x_i - center|, so scanning those breakpoints covers every achievable
// partition. b_max = 0 leaves the domain unbounded; otherwise only
// breakpoints <= b_max participate. Ties in |Psi| resolve to the
// smallest b. Runs in O(N log N).
scan_result breakpoint_scan(const sample& s, double center, double b_max = 0.0);

// Default grid for scan_grid: geometric, 200 points spanning
// [maxdist/200, maxdist] where maxdist = max |x_i - center|.
std::vector<double> default_grid(const sample& s, double center, std::size_t points = 200);

}  // namespace regime_split
