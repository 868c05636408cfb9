#include "regime_split/split_statistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace regime_split {

double sample_mean(const sample& s) {
  if (s.empty()) {
    throw error(errc::empty_sample, "mean of empty sample");
  }
  double sum = std::accumulate(s.begin(), s.end(), 0.0);
  return sum / static_cast<double>(s.size());
}

band_partition partition_by_band(const sample& s, double center, double b) {
  if (b < 0.0) {
    throw error(errc::domain_error, "band half-width must be >= 0");
  }
  band_partition p;
  p.center = center;
  p.b = b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i] - center) < b) {
      p.ordinary_indices.push_back(static_cast<std::uint32_t>(i));
    } else {
      p.abnormal_indices.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return p;
}

double psi(const sample& s, const band_partition& p) {
  double n = static_cast<double>(s.size());
  double sum_ordinary = 0.0;
  double sum_abnormal = 0.0;
  for (auto i : p.ordinary_indices) {
    sum_ordinary += s[i];
  }
  for (auto i : p.abnormal_indices) {
    sum_abnormal += s[i];
  }
  double n1 = static_cast<double>(p.n1());
  double n2 = static_cast<double>(p.n2());
  return (n2 * sum_ordinary - n1 * sum_abnormal) / (n * n);
}

double psi_rearranged(const sample& s, const band_partition& p) {
  double n = static_cast<double>(s.size());
  double sum_all = std::accumulate(s.begin(), s.end(), 0.0);
  double sum_ordinary = 0.0;
  for (auto i : p.ordinary_indices) {
    sum_ordinary += s[i];
  }
  double n1 = static_cast<double>(p.n1());
  return (n * sum_ordinary - n1 * sum_all) / (n * n);
}

scan_result scan_grid(const sample& s, double center, const std::vector<double>& grid) {
  if (grid.empty()) {
    throw error(errc::empty_grid, "scan grid has no points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw error(errc::invalid_grid, "grid values must be positive and finite", i + 1);
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw error(errc::invalid_grid, "grid must be strictly increasing", i + 1);
    }
  }

  std::size_t n = s.size();
  double mean = sample_mean(s);

  // Sort distances with deviations attached; prefix sums of deviations in
  // ascending-distance order give sum over the ordinary set {dist < b}.
  std::vector<std::pair<double, double>> by_dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_dist[i] = {std::abs(s[i] - center), s[i] - mean};
  }
  std::sort(by_dist.begin(), by_dist.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> prefix(n + 1, 0.0);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = by_dist[i].first;
    prefix[i + 1] = prefix[i] + by_dist[i].second;
  }

  scan_result res;
  res.grid = grid;
  res.psi_values.resize(grid.size());
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    std::size_t n1 = static_cast<std::size_t>(
        std::lower_bound(dist.begin(), dist.end(), grid[gi]) - dist.begin());
    double value = prefix[n1] / static_cast<double>(n);
    res.psi_values[gi] = value;
    if (std::abs(value) > best_abs) {
      best_abs = std::abs(value);
      best = gi;
    }
  }
  res.j = best_abs;
  res.b_star = grid[best];
  std::size_t n1_best = static_cast<std::size_t>(
      std::lower_bound(dist.begin(), dist.end(), grid[best]) - dist.begin());
  res.n2_at_b_star = n - n1_best;
  return res;
}

scan_result breakpoint_scan(const sample& s, double center, double b_max) {
  std::size_t n = s.size();
  if (n == 0) {
    throw error(errc::empty_sample, "scan of empty sample");
  }
  double mean = sample_mean(s);

  // States ordered by descending distance: state k makes the k+1 farthest
  // points abnormal, realized exactly at b = dist[k] (ordinary is strict <).
  // Psi at state k equals -(sum of their deviations)/N. States whose
  // distance ties the next one are not achievable by any b and are skipped.
  std::vector<std::pair<double, double>> by_dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_dist[i] = {std::abs(s[i] - center), s[i] - mean};
  }
  std::sort(by_dist.begin(), by_dist.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<double> state_b;
  std::vector<double> state_psi;
  std::vector<std::size_t> state_n2;
  state_b.reserve(n);
  state_psi.reserve(n);
  state_n2.reserve(n);
  double cum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cum += by_dist[k].second;
    double b = by_dist[k].first;
    if (!(b > 0.0)) {
      break;  // remaining states have b = 0, not a valid band
    }
    if (k + 1 < n && by_dist[k + 1].first == b) {
      continue;  // tied distance: partition not realizable at this state
    }
    if (b_max > 0.0 && b > b_max) {
      continue;
    }
    state_b.push_back(b);
    state_psi.push_back(-cum / static_cast<double>(n));
    state_n2.push_back(k + 1);
  }

  scan_result res;
  if (state_b.empty()) {
    return res;  // no achievable band: j = 0, empty grid
  }

  // Reverse into ascending-b order for the reported grid.
  std::reverse(state_b.begin(), state_b.end());
  std::reverse(state_psi.begin(), state_psi.end());
  std::reverse(state_n2.begin(), state_n2.end());

  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < state_b.size(); ++i) {
    if (std::abs(state_psi[i]) > best_abs) {
      best_abs = std::abs(state_psi[i]);
      best = i;
    }
  }
  res.grid = std::move(state_b);
  res.psi_values = std::move(state_psi);
  res.j = best_abs;
  res.b_star = res.grid[best];
  res.n2_at_b_star = state_n2[best];
  return res;
}

std::vector<double> default_grid(const sample& s, double center, std::size_t points) {
  double maxdist = 0.0;
  for (double x : s) {
    maxdist = std::max(maxdist, std::abs(x - center));
  }
  if (!(maxdist > 0.0)) {
    throw error(errc::degenerate_variance, "all observations coincide with the center");
  }
  std::vector<double> grid(points);
  double lo = maxdist / static_cast<double>(points);
  double ratio = std::pow(maxdist / lo, 1.0 / static_cast<double>(points - 1));
  double value = lo;
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = value;
    value *= ratio;
  }
  grid.back() = maxdist;
  return grid;
}

}  // namespace regime_split
