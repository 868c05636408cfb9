#include "regime_split/switching_regression.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regime_split/binary_detector.hpp"

namespace regime_split {

namespace {

using design_matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_data(const regression_data& d) {
  if (d.k == 0) {
    throw error(errc::invalid_spec, "design needs at least one column");
  }
  if (d.y.empty()) {
    throw error(errc::empty_sample, "regression needs observations");
  }
  if (d.x.size() != d.y.size() * d.k) {
    throw error(errc::dimension_mismatch, "design rows must match the response length");
  }
  if (d.y.size() <= d.k) {
    throw error(errc::sample_too_small, "need more observations than coefficients");
  }
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (!std::isfinite(d.x[i])) {
      throw error(errc::non_finite_value, "design contains a non-finite value",
                  i / d.k + 1);
    }
  }
  for (std::size_t i = 0; i < d.y.size(); ++i) {
    if (!std::isfinite(d.y[i])) {
      throw error(errc::non_finite_value, "response contains a non-finite value", i + 1);
    }
  }
}

struct fit {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd projector;  // (X'X)^{-1} X', k x N
};

fit solve(const regression_data& d) {
  auto n = static_cast<Eigen::Index>(d.size());
  auto k = static_cast<Eigen::Index>(d.k);
  Eigen::Map<const design_matrix> x(d.x.data(), n, k);
  Eigen::Map<const Eigen::VectorXd> y(d.y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < k) {
    throw error(errc::rank_deficient, "design columns are linearly dependent");
  }
  fit f;
  f.beta = qr.solve(y);
  f.residuals = y - x * f.beta;
  Eigen::MatrixXd xtx = x.transpose() * x;
  f.projector = xtx.ldlt().solve(x.transpose());
  return f;
}

sample track_from_fit(const regression_data& d, const fit& f, std::size_t j, bool rescaled) {
  std::size_t n = d.size();
  double nn = static_cast<double>(n);
  sample t(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a_ji = f.projector(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    double influence = nn * a_ji * f.residuals(static_cast<Eigen::Index>(i));
    if (rescaled) {
      double m = nn * a_ji * d.row(i)[j];
      t[i] = f.beta(static_cast<Eigen::Index>(j)) +
             (m != 0.0 ? f.residuals(static_cast<Eigen::Index>(i)) / d.row(i)[j]
                       : influence);
    } else {
      t[i] = f.beta(static_cast<Eigen::Index>(j)) + influence;
    }
  }
  return t;
}

}  // namespace

ols_result ols(const regression_data& d) {
  check_data(d);
  fit f = solve(d);
  ols_result out;
  out.beta.assign(f.beta.data(), f.beta.data() + f.beta.size());
  out.residuals.assign(f.residuals.data(), f.residuals.data() + f.residuals.size());
  return out;
}

sample coefficient_sequence(const regression_data& d, std::size_t j, bool rescaled) {
  check_data(d);
  if (j >= d.k) {
    throw error(errc::domain_error, "coefficient index out of range");
  }
  return track_from_fit(d, solve(d), j, rescaled);
}

regression_switch_report detect_switching_regression(const regression_data& d,
                                                     const detection_config& cfg, double c) {
  check_data(d);
  if (d.size() < static_cast<std::size_t>(cfg.n_min)) {
    throw error(errc::sample_too_small,
                "need at least " + std::to_string(cfg.n_min) + " observations");
  }
  fit f = solve(d);

  regression_switch_report report;
  report.per_coefficient.reserve(d.k);
  double best_j = 0.0;
  for (std::size_t j = 0; j < d.k; ++j) {
    sample influence_track = track_from_fit(d, f, j, false);
    detection_report rep = detect_symmetric(influence_track, cfg, c);
    if (rep.switches) {
      report.any_switch = true;
      sample rescaled_track = track_from_fit(d, f, j, true);
      detection_report rescaled_rep = detect_symmetric(rescaled_track, cfg, c);
      if (!rescaled_rep.scan.grid.empty()) {
        rep.epsilon_hat = static_cast<double>(rescaled_rep.scan.n2_at_b_star) /
                          static_cast<double>(d.size());
      }
      if (rep.j > best_j) {
        best_j = rep.j;
        report.strongest_coefficient = static_cast<int>(j);
        report.epsilon_hat = rep.epsilon_hat;
      }
    }
    report.per_coefficient.push_back(std::move(rep));
  }
  return report;
}

}  // namespace regime_split
