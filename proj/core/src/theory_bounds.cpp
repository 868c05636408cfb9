#include "regime_split/theory_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace regime_split {

namespace {

double simpson(const density& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const density& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  if (depth > 60) {
    throw error(errc::quadrature_failure, "adaptive refinement exceeded depth limit");
  }
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(f, a, m, fa, flm, fm);
  double right = simpson(f, m, b, fm, frm, fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const density& f, double lo, double hi, double tol) {
  if (!(hi >= lo)) {
    throw error(errc::domain_error, "integration bounds out of order");
  }
  if (hi == lo) {
    return 0.0;
  }
  // Seed the refinement from a handful of panels so narrow features
  // inside wide domains are not missed by the first Simpson estimate.
  constexpr int panels = 16;
  double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * width;
    double b = (p == panels - 1) ? hi : a + width;
    double m = 0.5 * (a + b);
    double fa = f(a);
    double fm = f(m);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
      throw error(errc::quadrature_failure, "integrand is not finite on the domain");
    }
    double whole = simpson(f, a, b, fa, fm, fb);
    total += adaptive_step(f, a, b, fa, fm, fb, whole, tol / panels, 0);
  }
  return total;
}

cramer_constants gaussian_cramer(double sigma) {
  if (!(sigma > 0.0)) {
    throw error(errc::domain_error, "sigma must be positive");
  }
  return cramer_constants{sigma * sigma, 10.0 / sigma};
}

double gamma_of(double x, const cramer_constants& cc) {
  if (!(x > 0.0)) {
    throw error(errc::domain_error, "gamma_of requires x > 0");
  }
  if (!(cc.g > 0.0) || !(cc.big_h > 0.0)) {
    throw error(errc::domain_error, "Cramer constants must be positive");
  }
  double exponent = (x <= cc.g * cc.big_h) ? x * x / (4.0 * cc.g) : x * cc.big_h / 4.0;
  return std::expm1(exponent);
}

int phi0_of(double x, const mixing_profile& mp, const cramer_constants& cc) {
  double gamma = gamma_of(x, cc);
  const auto& psi = mp.psi_coefficients;
  if (psi.empty()) {
    return 1;  // independent data
  }
  for (std::size_t l = 0; l < psi.size(); ++l) {
    if (psi[l] < 0.0 || (l > 0 && psi[l] > psi[l - 1])) {
      throw error(errc::domain_error, "mixing profile must be nonincreasing and nonnegative");
    }
  }
  for (std::size_t l = 0; l < psi.size(); ++l) {
    if (psi[l] <= gamma) {
      return static_cast<int>(l) + 1;
    }
  }
  throw error(errc::no_such_lag, "mixing profile tail never drops below gamma(x)");
}

namespace {

double rate(double x, int phi0, const cramer_constants& cc) {
  if (!(x > 0.0)) {
    throw error(errc::domain_error, "rate argument must be positive");
  }
  if (phi0 < 1) {
    throw error(errc::domain_error, "phi0 must be >= 1");
  }
  double p = static_cast<double>(phi0);
  return std::min(cc.big_h * x / (8.0 * p), x * x / (16.0 * p * p * cc.g));
}

}  // namespace

double type1_rate(double c, int phi0, const cramer_constants& cc) { return rate(c, phi0, cc); }

double type2_rate(double delta, int phi0, const cramer_constants& cc) {
  return rate(delta, phi0, cc);
}

double type1_bound(std::size_t n, double c, int phi0, const cramer_constants& cc) {
  double l = type1_rate(c, phi0, cc);
  return std::min(1.0, 4.0 * phi0 * std::exp(-l * static_cast<double>(n)));
}

double type2_bound(std::size_t n, double delta, int phi0, const cramer_constants& cc) {
  double l = type2_rate(delta, phi0, cc);
  return std::min(1.0, 4.0 * phi0 * std::exp(-l * static_cast<double>(n)));
}

double multiclass_bound(std::size_t n, double l1, double rate_delta, double rate_c) {
  double nn = static_cast<double>(n);
  return std::min(1.0, l1 * (std::exp(-rate_delta * nn) + std::exp(-rate_c * nn)));
}

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

density normal_pdf(double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw error(errc::domain_error, "sigma must be positive");
  }
  return [mu, sigma](double x) { return standard_normal_pdf((x - mu) / sigma) / sigma; };
}

double theoretical_psi(double b, double epsilon, double h, const density& f0) {
  if (!(b > 0.0)) {
    throw error(errc::domain_error, "band half-width must be positive");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw error(errc::domain_error, "epsilon must lie in [0,1)");
  }
  double center = epsilon * h;
  auto mixture = [&](double x) {
    return (1.0 - epsilon) * f0(x) + epsilon * f0(x - h);
  };
  double r = integrate([&](double x) { return x * mixture(x); }, center - b, center + b);
  double d = integrate(mixture, center - b, center + b);
  return r - center * d;
}

double optimal_band(double epsilon, double h, const density& f0, double b_max) {
  if (epsilon * h == 0.0) {
    throw error(errc::domain_error, "optimal band requires eps*h != 0");
  }
  double center = epsilon * h;
  auto edge_gap = [&](double b) {
    double right = (1.0 - epsilon) * f0(center + b) + epsilon * f0(center + b - h);
    double left = (1.0 - epsilon) * f0(center - b) + epsilon * f0(center - b - h);
    return right - left;
  };

  if (b_max <= 0.0) {
    b_max = std::abs(h) + 12.0;
  }
  constexpr int subdivisions = 64;
  double lo_bound = b_max * 1e-6;
  double ratio = std::pow(b_max / lo_bound, 1.0 / (subdivisions - 1));

  double prev_b = lo_bound;
  double prev_v = edge_gap(prev_b);
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double point = lo_bound;
  for (int i = 1; i < subdivisions; ++i) {
    point *= ratio;
    double v = edge_gap(point);
    if (prev_v == 0.0) {
      return prev_b;
    }
    if (prev_v * v < 0.0) {
      bracket_lo = prev_b;
      bracket_hi = point;
      break;
    }
    prev_b = point;
    prev_v = v;
  }
  if (bracket_hi == 0.0) {
    throw error(errc::no_root_in_range, "no sign change of the edge condition in (0, b_max]");
  }

  double flo = edge_gap(bracket_lo);
  for (int iter = 0; iter < 200 && bracket_hi - bracket_lo > 1e-12; ++iter) {
    double mid = 0.5 * (bracket_lo + bracket_hi);
    double fmid = edge_gap(mid);
    if (fmid == 0.0) {
      return mid;
    }
    if (flo * fmid < 0.0) {
      bracket_hi = mid;
    } else {
      bracket_lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (bracket_lo + bracket_hi);
}

double info_bound_j(double epsilon, const density& f0, const density& f1,
                    double lo, double hi) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw error(errc::domain_error, "epsilon must lie in [0,1)");
  }
  auto integrand = [&](double x) {
    double a = f0(x);
    double b = f1(x);
    double diff = a - b;
    if (diff == 0.0) {
      return 0.0;
    }
    double mix = (1.0 - epsilon) * a + epsilon * b;
    if (mix <= 0.0) {
      if (std::abs(diff) > 1e-300) {
        throw error(errc::division_by_support_gap,
                    "mixture density vanishes where f0 != f1");
      }
      return 0.0;
    }
    return diff * diff / mix;
  };
  return integrate(integrand, lo, hi);
}

double info_bound_j_normal(double epsilon, double mu0, double sigma0,
                           double mu1, double sigma1) {
  double smax = std::max(sigma0, sigma1);
  double lo = std::min(mu0, mu1) - 12.0 * smax;
  double hi = std::max(mu0, mu1) + 12.0 * smax;
  return info_bound_j(epsilon, normal_pdf(mu0, sigma0), normal_pdf(mu1, sigma1), lo, hi);
}

}  // namespace regime_split
