#include "regime_split/multivariate_detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace regime_split {

namespace {

void check_vectors(const vector_sample& vs) {
  if (vs.dim == 0) {
    throw error(errc::invalid_spec, "vector sample needs dim >= 1");
  }
  if (vs.data.empty()) {
    throw error(errc::empty_sample, "vector sample has no observations");
  }
  if (vs.data.size() % vs.dim != 0) {
    throw error(errc::dimension_mismatch, "data length is not a multiple of dim");
  }
  for (std::size_t i = 0; i < vs.data.size(); ++i) {
    if (!std::isfinite(vs.data[i])) {
      throw error(errc::non_finite_value, "vector sample contains a non-finite value",
                  i / vs.dim + 1);
    }
  }
}

std::vector<double> mean_vector(const vector_sample& vs) {
  std::size_t n = vs.size();
  std::vector<double> mean(vs.dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = vs.row(i);
    for (std::size_t r = 0; r < vs.dim; ++r) {
      mean[r] += row[r];
    }
  }
  for (double& m : mean) {
    m /= static_cast<double>(n);
  }
  return mean;
}

double norm2(const double* v, std::size_t d) {
  double s = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    s += v[r] * v[r];
  }
  return std::sqrt(s);
}

}  // namespace

sample norms(const vector_sample& vs) {
  check_vectors(vs);
  std::size_t n = vs.size();
  sample out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = norm2(vs.row(i), vs.dim);
  }
  return out;
}

vector_scan_result breakpoint_scan_vector(const vector_sample& vs,
                                          const std::vector<double>& center,
                                          double b_max) {
  check_vectors(vs);
  if (center.size() != vs.dim) {
    throw error(errc::dimension_mismatch, "center must have length dim");
  }
  std::size_t n = vs.size();
  std::size_t d = vs.dim;
  std::vector<double> mean = mean_vector(vs);

  // Observations sorted by distance from the scan center, farthest first;
  // cum accumulates their deviations from the sample mean, so the state
  // with the k+1 farthest points abnormal has Psi = -cum / N.
  std::vector<std::pair<double, std::size_t>> by_dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> diff(d);
    const double* row = vs.row(i);
    for (std::size_t r = 0; r < d; ++r) {
      diff[r] = row[r] - center[r];
    }
    by_dist[i] = {norm2(diff.data(), d), i};
  }
  std::sort(by_dist.begin(), by_dist.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  vector_scan_result res;
  res.dim = d;
  std::vector<double> cum(d, 0.0);
  std::vector<double> grid_desc;
  std::vector<double> psi_desc;
  std::vector<std::size_t> n2_desc;
  for (std::size_t k = 0; k < n; ++k) {
    double b = by_dist[k].first;
    const double* row = vs.row(by_dist[k].second);
    for (std::size_t r = 0; r < d; ++r) {
      cum[r] += row[r] - mean[r];
    }
    if (!(b > 0.0)) {
      break;
    }
    if (b_max > 0.0 && b > b_max) {
      continue;
    }
    if (k + 1 < n && by_dist[k + 1].first == b) {
      continue;
    }
    grid_desc.push_back(b);
    for (std::size_t r = 0; r < d; ++r) {
      psi_desc.push_back(-cum[r] / static_cast<double>(n));
    }
    n2_desc.push_back(k + 1);
  }
  if (grid_desc.empty()) {
    return res;
  }

  std::size_t m = grid_desc.size();
  res.grid.resize(m);
  res.psi_vectors.resize(m * d);
  std::vector<std::size_t> n2s(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t src = m - 1 - i;
    res.grid[i] = grid_desc[src];
    n2s[i] = n2_desc[src];
    for (std::size_t r = 0; r < d; ++r) {
      res.psi_vectors[i * d + r] = psi_desc[src * d + r];
    }
  }
  std::size_t best = 0;
  double best_norm = norm2(res.psi_row(0), d);
  for (std::size_t i = 1; i < m; ++i) {
    double nn = norm2(res.psi_row(i), d);
    if (nn > best_norm) {
      best_norm = nn;
      best = i;
    }
  }
  res.j = best_norm;
  res.b_star = res.grid[best];
  res.n2_at_b_star = n2s[best];
  return res;
}

detection_report detect_multivariate(const vector_sample& vs, const detection_config& cfg,
                                     double c) {
  check_vectors(vs);
  std::size_t n = vs.size();
  if (n < static_cast<std::size_t>(cfg.n_min)) {
    throw error(errc::sample_too_small,
                "need at least " + std::to_string(cfg.n_min) + " observations");
  }
  std::vector<double> mean = mean_vector(vs);

  detection_report rep;
  rep.c = c;
  vector_scan_result vscan;
  if (cfg.b_grid.empty()) {
    vscan = breakpoint_scan_vector(vs, mean, cfg.b_max);
  } else {
    // Direct evaluation on the caller's radius grid.
    double prev = 0.0;
    for (std::size_t i = 0; i < cfg.b_grid.size(); ++i) {
      if (!(std::isfinite(cfg.b_grid[i]) && cfg.b_grid[i] > prev)) {
        throw error(errc::invalid_grid, "grid must be positive, finite, strictly increasing",
                    i + 1);
      }
      prev = cfg.b_grid[i];
    }
    std::size_t d = vs.dim;
    vscan.dim = d;
    vscan.grid = cfg.b_grid;
    vscan.psi_vectors.assign(cfg.b_grid.size() * d, 0.0);
    std::vector<std::size_t> n2s(cfg.b_grid.size(), 0);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> diff(d);
      const double* row = vs.row(i);
      for (std::size_t r = 0; r < d; ++r) {
        diff[r] = row[r] - mean[r];
      }
      dist[i] = norm2(diff.data(), d);
    }
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t gi = 0; gi < cfg.b_grid.size(); ++gi) {
      double* psi = vscan.psi_vectors.data() + gi * d;
      for (std::size_t i = 0; i < n; ++i) {
        if (dist[i] < vscan.grid[gi]) {
          const double* row = vs.row(i);
          for (std::size_t r = 0; r < d; ++r) {
            psi[r] += (row[r] - mean[r]) / static_cast<double>(n);
          }
        } else {
          n2s[gi] += 1;
        }
      }
      double nn = norm2(psi, d);
      if (nn > best_norm) {
        best_norm = nn;
        best = gi;
      }
    }
    vscan.j = best_norm;
    vscan.b_star = vscan.grid[best];
    vscan.n2_at_b_star = n2s[best];
  }

  rep.j = vscan.j;
  rep.b_star = vscan.b_star;
  rep.scan.grid = vscan.grid;
  rep.scan.j = vscan.j;
  rep.scan.b_star = vscan.b_star;
  rep.scan.n2_at_b_star = vscan.n2_at_b_star;
  rep.scan.psi_values.resize(vscan.grid.size());
  for (std::size_t i = 0; i < vscan.grid.size(); ++i) {
    rep.scan.psi_values[i] = norm2(vscan.psi_row(i), vs.dim);
  }
  if (vscan.grid.empty()) {
    rep.diagnostic = "no realizable band; statistic is identically zero";
    return rep;
  }

  rep.partition_at_b_star.b = rep.b_star;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> diff(vs.dim);
    const double* row = vs.row(i);
    for (std::size_t r = 0; r < vs.dim; ++r) {
      diff[r] = row[r] - mean[r];
    }
    if (norm2(diff.data(), vs.dim) < rep.b_star) {
      rep.partition_at_b_star.ordinary_indices.push_back(static_cast<std::uint32_t>(i));
    } else {
      rep.partition_at_b_star.abnormal_indices.push_back(static_cast<std::uint32_t>(i));
    }
  }

  rep.switches = rep.j > c;
  if (rep.switches) {
    std::size_t n2 = rep.scan.n2_at_b_star;
    if (n2 == 0) {
      rep.diagnostic = "rejected with an empty abnormal set; epsilon undefined";
    } else {
      double eps = static_cast<double>(n2) / static_cast<double>(n);
      rep.epsilon_hat = eps;
      std::vector<double> a(vs.dim);
      for (std::size_t r = 0; r < vs.dim; ++r) {
        a[r] = mean[r] / eps;
      }
      rep.a_hat = std::move(a);
      if (vs.dim == 1) {
        rep.h_hat = mean[0] / eps;
      }
    }
  }
  return rep;
}

}  // namespace regime_split
