#include "regime_split/generators.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "regime_split/rng.hpp"

namespace regime_split {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw error(errc::invalid_spec, what);
  }
}

bool finite(double x) { return std::isfinite(x); }

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
std::vector<double> cholesky(const std::vector<double>& a, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double gap = std::abs(a[i * d + j] - a[j * d + i]);
      double scale = std::max(std::abs(a[i * d + j]), std::abs(a[j * d + i]));
      if (gap > 1e-12 * std::max(1.0, scale)) {
        throw error(errc::domain_error, "covariance matrix is not symmetric");
      }
    }
  }
  std::vector<double> l(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) {
        sum -= l[i * d + k] * l[j * d + k];
      }
      if (i == j) {
        if (!(sum > 0.0)) {
          throw error(errc::domain_error, "covariance matrix is not positive definite");
        }
        l[i * d + i] = std::sqrt(sum);
      } else {
        l[i * d + j] = sum / l[j * d + j];
      }
    }
  }
  return l;
}

}  // namespace

const generator_spec& validate_generator_spec(const generator_spec& spec) {
  using kind_t = generator_spec::kind_t;
  require(spec.n >= 1, "sample size must be >= 1");
  require(finite(spec.mu0) && finite(spec.sigma0) && spec.sigma0 > 0.0,
          "base distribution needs finite mu0 and sigma0 > 0");
  switch (spec.kind) {
    case kind_t::shift_mixture:
      require(spec.epsilon >= 0.0 && spec.epsilon < 1.0, "epsilon must lie in [0, 1)");
      require(finite(spec.h), "shift h must be finite");
      break;
    case kind_t::variance_mixture:
      require(spec.epsilon >= 0.0 && spec.epsilon < 1.0, "epsilon must lie in [0, 1)");
      require(finite(spec.lambda) && spec.lambda > 0.0, "lambda must be positive");
      break;
    case kind_t::multiclass_mixture: {
      require(!spec.shifts.empty(), "multiclass mixture needs class shifts");
      require(spec.epsilons.size() + 1 == spec.shifts.size(),
              "need one epsilon per abnormal class (shifts lists class 0 first)");
      double total = 0.0;
      for (double e : spec.epsilons) {
        require(e > 0.0 && e < 1.0, "class fractions must lie in (0, 1)");
        total += e;
      }
      require(total < 1.0, "class fractions must sum below 1");
      for (double sh : spec.shifts) {
        require(finite(sh), "class shifts must be finite");
      }
      break;
    }
    case kind_t::ar1:
      require(finite(spec.rho) && spec.rho > -1.0 && spec.rho < 1.0,
              "ar1 coefficient must lie in (-1, 1)");
      break;
    case kind_t::mv_gaussian_mixture: {
      require(spec.dim >= 1, "dimension must be >= 1");
      if (spec.covariance.size() != spec.dim * spec.dim) {
        throw error(errc::dimension_mismatch, "covariance must be dim x dim");
      }
      require(!spec.shift_vectors.empty(), "need shift vectors (class 0 first)");
      require(spec.epsilons.size() + 1 == spec.shift_vectors.size(),
              "need one epsilon per abnormal class");
      double total = 0.0;
      for (double e : spec.epsilons) {
        require(e > 0.0 && e < 1.0, "class fractions must lie in (0, 1)");
        total += e;
      }
      require(total < 1.0, "class fractions must sum below 1");
      for (const auto& v : spec.shift_vectors) {
        if (v.size() != spec.dim) {
          throw error(errc::dimension_mismatch, "shift vectors must have length dim");
        }
        for (double x : v) {
          require(finite(x), "shift vectors must be finite");
        }
      }
      break;
    }
    case kind_t::switching_regression:
      require(spec.epsilon >= 0.0 && spec.epsilon < 1.0, "epsilon must lie in [0, 1)");
      require(spec.beta0.size() == 2 && spec.beta1.size() == 2,
              "trend regression uses two coefficients (intercept, slope)");
      for (double b : spec.beta0) {
        require(finite(b), "beta0 must be finite");
      }
      for (double b : spec.beta1) {
        require(finite(b), "beta1 must be finite");
      }
      require(finite(spec.noise_sigma) && spec.noise_sigma > 0.0,
              "noise_sigma must be positive");
      break;
  }
  return spec;
}

generated_data generate(const generator_spec& spec) {
  using kind_t = generator_spec::kind_t;
  validate_generator_spec(spec);
  rng_stream rng(spec.seed, 0);
  generated_data out;

  switch (spec.kind) {
    case kind_t::shift_mixture: {
      out.values.resize(spec.n);
      out.labels.resize(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        bool abnormal = rng.uniform() < spec.epsilon;
        double z = rng.normal();
        out.labels[i] = abnormal ? 1 : 0;
        out.values[i] = spec.mu0 + spec.sigma0 * z + (abnormal ? spec.h : 0.0);
      }
      break;
    }
    case kind_t::variance_mixture: {
      out.values.resize(spec.n);
      out.labels.resize(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        bool abnormal = rng.uniform() < spec.epsilon;
        double z = rng.normal();
        out.labels[i] = abnormal ? 1 : 0;
        out.values[i] = spec.mu0 + spec.sigma0 * (abnormal ? spec.lambda : 1.0) * z;
      }
      break;
    }
    case kind_t::multiclass_mixture: {
      out.values.resize(spec.n);
      out.labels.resize(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        double u = rng.uniform();
        double z = rng.normal();
        int cls = 0;
        double cum = 0.0;
        for (std::size_t j = 0; j < spec.epsilons.size(); ++j) {
          cum += spec.epsilons[j];
          if (u < cum) {
            cls = static_cast<int>(j) + 1;
            break;
          }
        }
        out.labels[i] = cls;
        out.values[i] = spec.mu0 + spec.sigma0 * z + spec.shifts[cls];
      }
      break;
    }
    case kind_t::ar1: {
      out.values.resize(spec.n);
      out.labels.assign(spec.n, 0);
      double x = spec.mu0;
      for (int t = 0; t < 1000; ++t) {
        x = spec.mu0 + spec.rho * (x - spec.mu0) + spec.sigma0 * rng.normal();
      }
      for (std::size_t i = 0; i < spec.n; ++i) {
        x = spec.mu0 + spec.rho * (x - spec.mu0) + spec.sigma0 * rng.normal();
        out.values[i] = x;
      }
      break;
    }
    case kind_t::mv_gaussian_mixture: {
      std::size_t d = spec.dim;
      std::vector<double> l = cholesky(spec.covariance, d);
      out.vectors.dim = d;
      out.vectors.data.resize(spec.n * d);
      out.labels.resize(spec.n);
      std::vector<double> z(d);
      for (std::size_t i = 0; i < spec.n; ++i) {
        double u = rng.uniform();
        for (std::size_t k = 0; k < d; ++k) {
          z[k] = rng.normal();
        }
        int cls = 0;
        double cum = 0.0;
        for (std::size_t j = 0; j < spec.epsilons.size(); ++j) {
          cum += spec.epsilons[j];
          if (u < cum) {
            cls = static_cast<int>(j) + 1;
            break;
          }
        }
        out.labels[i] = cls;
        double* row = out.vectors.row(i);
        const auto& shift = spec.shift_vectors[cls];
        for (std::size_t r = 0; r < d; ++r) {
          double v = shift[r];
          for (std::size_t k = 0; k <= r; ++k) {
            v += l[r * d + k] * z[k];
          }
          row[r] = v;
        }
      }
      break;
    }
    case kind_t::switching_regression: {
      out.regression.k = 2;
      out.regression.x.resize(spec.n * 2);
      out.regression.y.resize(spec.n);
      out.labels.resize(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        bool switched = rng.uniform() < spec.epsilon;
        double z = rng.normal();
        double t = static_cast<double>(i + 1);
        const auto& beta = switched ? spec.beta1 : spec.beta0;
        out.regression.x[i * 2] = 1.0;
        out.regression.x[i * 2 + 1] = t;
        out.regression.y[i] = beta[0] + beta[1] * t + spec.noise_sigma * z;
        out.labels[i] = switched ? 1 : 0;
      }
      break;
    }
  }
  return out;
}

}  // namespace regime_split
