#pragma once

#include <functional>
#include <vector>

#include "regime_split/types.hpp"

namespace regime_split {

using density = std::function<double(double)>;

// Constants of the uniform Cramer condition E exp(t*y) <= exp(g*t^2/2)
// for |t| <= H. For N(0, sigma^2): g = sigma^2; H has no finite bound,
// the documented convention here is H = 10/sigma.
struct cramer_constants {
  double g = 1.0;
  double big_h = 10.0;
};

cramer_constants gaussian_cramer(double sigma);

// Dependence-decay profile psi(1) >= psi(2) >= ... >= 0; an empty
// profile means independent observations.
struct mixing_profile {
  std::vector<double> psi_coefficients;
};

// ln(1 + gamma) = x^2/(4g) for x <= g*H, x*H/4 otherwise.
double gamma_of(double x, const cramer_constants& cc);

// Smallest lag l >= 1 with psi(l) <= gamma(x); beyond the profile the
// last coefficient persists.
int phi0_of(double x, const mixing_profile& mp, const cramer_constants& cc);

// Exponential rate L(C) = min(H*C/(8*phi0), C^2/(16*phi0^2*g)).
double type1_rate(double c, int phi0, const cramer_constants& cc);

// Same form with the margin delta = max_b |Psi(b)| - C in place of C.
double type2_rate(double delta, int phi0, const cramer_constants& cc);

// The bounds themselves: min(1, 4*phi0*exp(-L*N)).
double type1_bound(std::size_t n, double c, int phi0, const cramer_constants& cc);
double type2_bound(std::size_t n, double delta, int phi0, const cramer_constants& cc);

// Multiclass misclassification bound min(1, l1*(exp(-L(delta)N) + exp(-L(C)N))).
double multiclass_bound(std::size_t n, double l1, double rate_delta, double rate_c);

// Adaptive quadrature (Simpson with interval refinement), absolute
// tolerance driven; throws QuadratureFailure when refinement stalls.
double integrate(const density& f, double lo, double hi, double tol = 1e-10);

// Theoretical split curve for the shift mixture
// f(x) = (1-eps) f0(x) + eps f0(x-h):
//   Psi(b) = r(b) - eps*h*d(b),
//   r(b) = integral of x f(x), d(b) = integral of f(x), both over
//   [eps*h - b, eps*h + b].
double theoretical_psi(double b, double epsilon, double h, const density& f0);

// Root of f(eps*h + b) = f(eps*h - b) on (0, b_max]; coincides with the
// maximizer of |Psi(b)|. b_max = 0 selects |h| + 12. Bracketing over 64
// geometric subdivisions, then bisection.
double optimal_band(double epsilon, double h, const density& f0, double b_max = 0.0);

// Generalized chi-square distance J(eps) = integral (f0-f1)^2 / f_eps
// over [lo, hi] with f_eps = (1-eps) f0 + eps f1; the classification
// error exponent is bounded below by -delta^2 * J(eps).
double info_bound_j(double epsilon, const density& f0, const density& f1,
                    double lo, double hi);

// Convenience for Gaussian pairs: integration domain
// [min(mu)-12*max(sigma), max(mu)+12*max(sigma)].
double info_bound_j_normal(double epsilon, double mu0, double sigma0,
                           double mu1, double sigma1);

double standard_normal_pdf(double x);
density normal_pdf(double mu, double sigma);

}  // namespace regime_split
