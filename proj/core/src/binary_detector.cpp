#include "regime_split/binary_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "regime_split/split_statistic.hpp"

namespace regime_split {

namespace {

void check_input(const sample& s, int n_min) {
  if (s.empty()) {
    throw error(errc::empty_sample, "detection needs observations");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i])) {
      throw error(errc::non_finite_value, "sample contains a non-finite value", i + 1);
    }
  }
  if (s.size() < static_cast<std::size_t>(n_min)) {
    throw error(errc::sample_too_small,
                "need at least " + std::to_string(n_min) + " observations");
  }
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) {
    throw error(errc::empty_grid, "band grid is empty");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(std::isfinite(grid[i]) && grid[i] > prev)) {
      throw error(errc::invalid_grid, "grid must be positive, finite, strictly increasing",
                  i + 1);
    }
    prev = grid[i];
  }
}

double checked_phi(const std::function<double(double)>& phi, double b) {
  double v = phi(b);
  if (!std::isfinite(v) || v < 0.0) {
    throw error(errc::negative_phi, "band function must be finite and nonnegative");
  }
  return v;
}

// Smallest b with phi(b) >= target for a nondecreasing phi; +infinity when
// phi never reaches the target.
double invert_band(const std::function<double(double)>& phi, double target) {
  if (target <= 0.0) {
    return 0.0;
  }
  double hi = 1.0;
  while (checked_phi(phi, hi) < target) {
    hi *= 2.0;
    if (hi > 1e12) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double lo = 0.0;
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    if (checked_phi(phi, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Scan over per-point band-entry widths: at half-width b the band holds
// exactly the points whose crossing is <= b, so the statistic only changes
// at the sorted crossings. Tied crossings collapse into one state.
scan_result crossing_scan(std::vector<std::pair<double, double>> pts, double cap) {
  std::size_t n = pts.size();
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  scan_result res;
  std::vector<std::size_t> n2s;
  double cum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double b = pts[k].first;
    if (!std::isfinite(b) || (cap > 0.0 && b > cap)) {
      break;
    }
    cum += pts[k].second;
    if (!(b > 0.0)) {
      continue;
    }
    if (k + 1 < n && pts[k + 1].first == b) {
      continue;
    }
    res.grid.push_back(b);
    res.psi_values.push_back(cum / static_cast<double>(n));
    n2s.push_back(n - (k + 1));
  }
  if (res.grid.empty()) {
    return res;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < res.psi_values.size(); ++i) {
    if (std::abs(res.psi_values[i]) > std::abs(res.psi_values[best])) {
      best = i;
    }
  }
  res.j = std::abs(res.psi_values[best]);
  res.b_star = res.grid[best];
  res.n2_at_b_star = n2s[best];
  return res;
}

// Direct evaluation over an explicit grid of half-widths; edges(b) returns
// the closed ordinary interval for the transformed values.
scan_result banded_grid_scan(const std::vector<double>& y, const std::vector<double>& dev,
                             const std::vector<double>& grid,
                             const std::function<std::pair<double, double>(double)>& edges) {
  check_grid(grid);
  std::size_t n = y.size();
  scan_result res;
  res.grid = grid;
  res.psi_values.resize(grid.size());
  std::vector<std::size_t> n2s(grid.size());
  std::size_t best = 0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    auto [lo, hi] = edges(grid[gi]);
    double cum = 0.0;
    std::size_t n2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] >= lo && y[i] <= hi) {
        cum += dev[i];
      } else {
        ++n2;
      }
    }
    res.psi_values[gi] = cum / static_cast<double>(n);
    n2s[gi] = n2;
    if (std::abs(res.psi_values[gi]) > std::abs(res.psi_values[best])) {
      best = gi;
    }
  }
  res.j = std::abs(res.psi_values[best]);
  res.b_star = res.grid[best];
  res.n2_at_b_star = n2s[best];
  return res;
}

void fill_partition_from_crossings(detection_report& rep, const std::vector<double>& cross,
                                   double center) {
  rep.partition_at_b_star.center = center;
  rep.partition_at_b_star.b = rep.b_star;
  for (std::size_t i = 0; i < cross.size(); ++i) {
    if (cross[i] <= rep.b_star) {
      rep.partition_at_b_star.ordinary_indices.push_back(static_cast<std::uint32_t>(i));
    } else {
      rep.partition_at_b_star.abnormal_indices.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

void fill_partition_from_band(detection_report& rep, const std::vector<double>& y, double lo,
                              double hi, double center) {
  rep.partition_at_b_star.center = center;
  rep.partition_at_b_star.b = rep.b_star;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= lo && y[i] <= hi) {
      rep.partition_at_b_star.ordinary_indices.push_back(static_cast<std::uint32_t>(i));
    } else {
      rep.partition_at_b_star.abnormal_indices.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

void finish_rejection(detection_report& rep, std::size_t n, double c, bool with_h,
                      double mean) {
  rep.switches = rep.j > c;
  if (!rep.switches) {
    return;
  }
  std::size_t n2 = rep.scan.n2_at_b_star;
  if (n2 == 0) {
    rep.diagnostic = "rejected with an empty abnormal set; epsilon undefined";
    return;
  }
  double eps = static_cast<double>(n2) / static_cast<double>(n);
  rep.epsilon_hat = eps;
  if (with_h) {
    rep.h_hat = mean / eps;
  }
}

}  // namespace

double variance_band_phi(double b) {
  if (!(b >= 0.0)) {
    throw error(errc::domain_error, "band width must be nonnegative");
  }
  if (b == 0.0) {
    return 0.0;
  }
  return 1.0 - b / std::expm1(b);
}

double variance_band_phi_inverse(double target) {
  if (!(target >= 0.0 && target < 1.0)) {
    throw error(errc::domain_error, "band shrink target must lie in [0, 1)");
  }
  return invert_band([](double b) { return variance_band_phi(b); }, target);
}

detection_report detect_symmetric(const sample& s, const detection_config& cfg, double c) {
  check_input(s, cfg.n_min);
  double mean = sample_mean(s);
  detection_report rep;
  rep.c = c;
  rep.scan = cfg.b_grid.empty() ? breakpoint_scan(s, mean, cfg.b_max)
                                : scan_grid(s, mean, cfg.b_grid);
  rep.j = rep.scan.j;
  rep.b_star = rep.scan.b_star;
  if (rep.scan.grid.empty()) {
    rep.diagnostic = "no realizable band; statistic is identically zero";
    rep.partition_at_b_star.center = mean;
    return rep;
  }
  rep.partition_at_b_star = partition_by_band(s, mean, rep.b_star);
  finish_rejection(rep, s.size(), c, true, mean);
  return rep;
}

detection_report detect_asymmetric(const sample& s, const detection_config& cfg, double c) {
  check_input(s, cfg.n_min);
  if (!cfg.phi) {
    throw error(errc::invalid_spec, "asymmetric variant needs cfg.phi");
  }
  double mean = sample_mean(s);
  std::size_t n = s.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = s[i] - mean;
  }

  detection_report rep;
  rep.c = c;
  if (cfg.b_grid.empty()) {
    std::vector<double> cross(n);
    std::vector<std::pair<double, double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      cross[i] = y[i] >= 0.0 ? y[i] : invert_band(cfg.phi, -y[i]);
      pts[i] = {cross[i], y[i]};
    }
    rep.scan = crossing_scan(std::move(pts), cfg.b_max);
    rep.j = rep.scan.j;
    rep.b_star = rep.scan.b_star;
    if (rep.scan.grid.empty()) {
      rep.diagnostic = "no realizable band; statistic is identically zero";
      rep.partition_at_b_star.center = mean;
      return rep;
    }
    fill_partition_from_crossings(rep, cross, mean);
  } else {
    rep.scan = banded_grid_scan(y, y, cfg.b_grid, [&](double b) {
      return std::pair<double, double>{-checked_phi(cfg.phi, b), b};
    });
    rep.j = rep.scan.j;
    rep.b_star = rep.scan.b_star;
    fill_partition_from_band(rep, y, -checked_phi(cfg.phi, rep.b_star), rep.b_star, mean);
  }
  finish_rejection(rep, n, c, false, mean);
  return rep;
}

detection_report detect_variance_contamination(const sample& s, const detection_config& cfg,
                                               double c) {
  check_input(s, cfg.n_min);
  double mean = sample_mean(s);
  std::size_t n = s.size();
  std::vector<double> y(n);
  double theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (s[i] - mean) * (s[i] - mean);
    theta += y[i];
  }
  theta /= static_cast<double>(n);
  if (!(theta > 0.0)) {
    throw error(errc::degenerate_variance, "constant sample has no variance scale");
  }
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) {
    dev[i] = y[i] - theta;
  }

  detection_report rep;
  rep.c = c;
  if (cfg.b_grid.empty()) {
    std::vector<double> cross(n);
    std::vector<std::pair<double, double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] / theta;
      if (y[i] >= theta) {
        cross[i] = r - 1.0;
      } else if (r <= 0.0) {
        cross[i] = std::numeric_limits<double>::infinity();
      } else {
        cross[i] = variance_band_phi_inverse(1.0 - r);
      }
      pts[i] = {cross[i], dev[i]};
    }
    rep.scan = crossing_scan(std::move(pts), cfg.b_max);
    rep.j = rep.scan.j;
    rep.b_star = rep.scan.b_star;
    if (rep.scan.grid.empty()) {
      rep.diagnostic = "no realizable band; statistic is identically zero";
      rep.partition_at_b_star.center = theta;
      return rep;
    }
    fill_partition_from_crossings(rep, cross, theta);
  } else {
    rep.scan = banded_grid_scan(y, dev, cfg.b_grid, [&](double b) {
      return std::pair<double, double>{theta * (1.0 - variance_band_phi(b)),
                                       theta * (1.0 + b)};
    });
    rep.j = rep.scan.j;
    rep.b_star = rep.scan.b_star;
    fill_partition_from_band(rep, y, theta * (1.0 - variance_band_phi(rep.b_star)),
                             theta * (1.0 + rep.b_star), theta);
  }
  finish_rejection(rep, n, c, false, mean);
  return rep;
}

detection_report detect(const sample& s, const detection_config& cfg, double c) {
  switch (cfg.variant) {
    case detection_config::variant_t::symmetric:
      return detect_symmetric(s, cfg, c);
    case detection_config::variant_t::asymmetric:
      return detect_asymmetric(s, cfg, c);
    case detection_config::variant_t::variance_contamination:
      return detect_variance_contamination(s, cfg, c);
  }
  throw error(errc::invalid_spec, "unknown detection variant");
}

mixture_estimate consistent_estimates(double theta, double b_star, const density& f0) {
  if (!std::isfinite(theta) || !(b_star > 0.0)) {
    throw error(errc::domain_error, "need finite theta and b_star > 0");
  }
  double denom = f0(theta + b_star) - f0(theta - b_star);
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw error(errc::zero_denominator,
                "density difference across the band edges vanishes");
  }
  auto residual = [&](double eps) {
    double h = theta / eps;
    double num = f0(theta - b_star - h) - f0(theta + b_star - h);
    return (1.0 - eps) * denom - eps * num;
  };

  const double eps_lo = 1e-6;
  const double eps_hi = 0.5;
  const int cells = 64;
  double prev_e = eps_lo;
  double prev_r = residual(eps_lo);
  for (int k = 1; k <= cells; ++k) {
    double e = eps_lo * std::pow(eps_hi / eps_lo, static_cast<double>(k) / cells);
    double r = residual(e);
    if (std::isfinite(prev_r) && std::isfinite(r) && prev_r * r <= 0.0) {
      double a = prev_e;
      double b = e;
      double ra = prev_r;
      while (b - a > 1e-10) {
        double m = 0.5 * (a + b);
        double rm = residual(m);
        if (ra * rm <= 0.0) {
          b = m;
        } else {
          a = m;
          ra = rm;
        }
      }
      mixture_estimate est;
      est.epsilon_hat = 0.5 * (a + b);
      est.h_hat = theta / est.epsilon_hat;
      est.method = mixture_estimate::method_t::consistent_system;
      return est;
    }
    prev_e = e;
    prev_r = r;
  }
  throw error(errc::no_root_in_range, "no epsilon in (1e-6, 0.5] satisfies the system");
}

}  // namespace regime_split
