#include "regime_split/multiclass_detector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "regime_split/split_statistic.hpp"

namespace regime_split {

namespace {

void check_values(const sample& s) {
  if (s.empty()) {
    throw error(errc::empty_sample, "mode estimation needs observations");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i])) {
      throw error(errc::non_finite_value, "sample contains a non-finite value", i + 1);
    }
  }
}

struct histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::size_t> counts;
};

histogram bin_counts(const sample& s) {
  auto [mn, mx] = std::minmax_element(s.begin(), s.end());
  histogram h;
  h.lo = *mn;
  std::size_t bins = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(s.size())))));
  h.counts.assign(bins, 0);
  double span = *mx - *mn;
  if (span <= 0.0) {
    h.width = 0.0;
    h.counts[0] = s.size();
    return h;
  }
  h.width = span / static_cast<double>(bins);
  for (double x : s) {
    auto idx = static_cast<std::size_t>((x - h.lo) / h.width);
    h.counts[std::min(idx, bins - 1)] += 1;
  }
  return h;
}

}  // namespace

double histogram_mode(const sample& s) {
  check_values(s);
  histogram h = bin_counts(s);
  if (h.width == 0.0) {
    return h.lo;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.counts.size(); ++i) {
    if (h.counts[i] > h.counts[best]) {
      best = i;
    }
  }
  return h.lo + (static_cast<double>(best) + 0.5) * h.width;
}

double mode_estimate(const sample& s) {
  check_values(s);
  histogram h = bin_counts(s);
  if (h.width == 0.0) {
    return h.lo;
  }
  std::size_t bins = h.counts.size();
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < bins; ++i) {
    double score = 2.0 * static_cast<double>(h.counts[i]);
    if (i > 0) {
      score += static_cast<double>(h.counts[i - 1]);
    }
    if (i + 1 < bins) {
      score += static_cast<double>(h.counts[i + 1]);
    }
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  double mid = h.lo + (static_cast<double>(best) + 0.5) * h.width;
  double sum = 0.0;
  std::size_t count = 0;
  for (double x : s) {
    if (std::abs(x - mid) <= h.width) {
      sum += x;
      ++count;
    }
  }
  return count == 0 ? mid : sum / static_cast<double>(count);
}

namespace {

multiclass_report peel(const sample& s, const detection_config& cfg,
                       const std::function<double(int, std::size_t)>& threshold_at,
                       int max_classes) {
  check_values(s);
  if (max_classes < 1) {
    throw error(errc::invalid_spec, "max_classes must be >= 1");
  }
  double n_total = static_cast<double>(s.size());
  multiclass_report report;
  sample working = s;

  for (;;) {
    if (working.size() < static_cast<std::size_t>(cfg.min_step_n)) {
      report.termination = multiclass_report::termination_t::sample_exhausted;
      return report;
    }
    if (report.k_hat >= max_classes) {
      report.termination = multiclass_report::termination_t::max_classes_reached;
      return report;
    }
    double center = mode_estimate(working);
    double c = threshold_at(report.k_hat, working.size());

    detection_report rep;
    rep.c = c;
    rep.scan = breakpoint_scan(working, center, cfg.b_max);
    rep.j = rep.scan.j;
    rep.b_star = rep.scan.b_star;
    report.class_centers.push_back(center);

    if (rep.scan.grid.empty() || !(rep.j > c)) {
      if (!rep.scan.grid.empty()) {
        rep.partition_at_b_star = partition_by_band(working, center, rep.b_star);
      } else {
        rep.partition_at_b_star.center = center;
      }
      report.peel_trace.push_back(std::move(rep));
      report.termination = multiclass_report::termination_t::accepted;
      return report;
    }

    rep.switches = true;
    rep.partition_at_b_star = partition_by_band(working, center, rep.b_star);
    std::size_t n2 = rep.scan.n2_at_b_star;
    rep.epsilon_hat = static_cast<double>(n2) / static_cast<double>(working.size());
    if (n2 >= working.size()) {
      // Every point is abnormal at the best band, so there is no inner
      // class to remove.
      rep.diagnostic = "rejected with no ordinary points to peel";
      report.peel_trace.push_back(std::move(rep));
      report.termination = multiclass_report::termination_t::no_shrink;
      return report;
    }

    // Remove the detected class with the widest band that still rejects,
    // so near-boundary members of the class leave with it. The cut is
    // radial: everything no farther from zero than the detected class
    // goes, which suits norm-like inputs where classes sit at
    // increasing radii.
    double b_cut = rep.b_star;
    for (std::size_t i = rep.scan.grid.size(); i-- > 0;) {
      if (std::abs(rep.scan.psi_values[i]) > c) {
        b_cut = rep.scan.grid[i];
        break;
      }
    }
    double keep_radius = std::abs(center) + b_cut;
    sample kept;
    kept.reserve(working.size());
    for (double x : working) {
      if (std::abs(x) >= keep_radius) {
        kept.push_back(x);
      }
    }
    report.k_hat += 1;
    report.class_fractions.push_back(
        static_cast<double>(working.size() - kept.size()) / n_total);
    rep.diagnostic = "peeled " + std::to_string(working.size() - kept.size()) +
                     " observations below radius " + std::to_string(keep_radius);
    report.peel_trace.push_back(std::move(rep));

    if (kept.size() >= working.size()) {
      report.termination = multiclass_report::termination_t::no_shrink;
      return report;
    }
    working = std::move(kept);
  }
}

}  // namespace

multiclass_report detect_multiclass(const sample& s, const detection_config& cfg, double c,
                                    int max_classes) {
  if (!(c > 0.0)) {
    throw error(errc::domain_error, "threshold must be positive");
  }
  return peel(
      s, cfg, [c](int, std::size_t) { return c; }, max_classes);
}

multiclass_report detect_multiclass(const sample& s, const detection_config& cfg,
                                    const multiclass_threshold& thresholds,
                                    int max_classes) {
  return peel(
      s, cfg,
      [&thresholds](int step, std::size_t n) { return thresholds.at(step, n); },
      max_classes);
}

}  // namespace regime_split
