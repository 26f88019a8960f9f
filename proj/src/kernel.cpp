#include "gmlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmlab/errors.hpp"

namespace gmlab {

namespace {

constexpr double kJumpTol = 1e-9;

// Q(n+1, x) = e^{-x} sum_{j<=n} x^j / j!, the regularized upper incomplete
// Gamma function at integer shape.  Log-space fallback keeps it finite for
// large x where x^j/j! would overflow before the e^{-x} damping applies.
double poisson_tail(int n, double x) {
  if (x <= 0.0) return 1.0;
  if (x < 700.0) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= n; ++j) {
      term *= x / j;
      sum += term;
    }
    return std::exp(-x) * sum;
  }
  double lx = std::log(x);
  double m = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= n; ++j) m = std::max(m, j * lx - std::lgamma(j + 1.0));
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += std::exp(j * lx - std::lgamma(j + 1.0) - m);
  return std::exp(-x + m + std::log(s));
}

}  // namespace

BirthKernel BirthKernel::shifted_gamma(double tau, double kappa, int n, double mu) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw invalid_parameter("shifted_gamma: tau must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw invalid_parameter("shifted_gamma: mu must be positive");
  if (kappa < 0.0 || !std::isfinite(kappa)) throw invalid_parameter("shifted_gamma: kappa must be nonnegative");
  if (n < 0) throw invalid_parameter("shifted_gamma: shape n must be nonnegative");
  if (kappa == 0.0 && n > 0) throw invalid_parameter("shifted_gamma: kappa = 0 requires n = 0");

  BirthKernel k;
  k.mu_ = mu;
  k.tab_ = false;
  k.tau_ = tau;
  k.kappa_ = kappa;
  k.n_ = n;
  // C0 = e^{mu tau} (mu+kappa)^{n+1} / n!, assembled in log space
  k.c0_ = std::exp(mu * tau + (n + 1) * std::log(mu + kappa) - std::lgamma(n + 1.0));
  if (!std::isfinite(k.c0_)) throw numerical_error("shifted_gamma: normalization overflow");
  return k;
}

BirthKernel BirthKernel::tabulated(double grid_step, std::vector<double> values, double mu) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step))
    throw invalid_parameter("tabulated: grid_step must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw invalid_parameter("tabulated: mu must be positive");
  if (values.size() < 2) throw invalid_parameter("tabulated: need at least two grid values");
  int last_pos = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw invalid_parameter("tabulated: values must be finite and nonnegative");
    if (values[i] > 0.0) last_pos = static_cast<int>(i);
  }
  if (last_pos < 0) throw invalid_parameter("tabulated: all values are zero");

  // Tighten the support: at most one trailing zero node survives, so
  // gamma_tail vanishes exactly at support_end.
  values.resize(std::min(static_cast<std::size_t>(last_pos) + 2, values.size()));

  const std::size_t m = values.size();
  double norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
    norm += w * grid_step * values[i] * std::exp(-mu * grid_step * static_cast<double>(i));
  }
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw numerical_error("tabulated: cannot normalize kernel");
  for (double& v : values) v /= norm;

  BirthKernel k;
  k.mu_ = mu;
  k.tab_ = true;
  k.da_ = grid_step;
  k.support_end_ = grid_step * static_cast<double>(m - 1);
  k.values_ = std::move(values);
  k.vmax_ = *std::max_element(k.values_.begin(), k.values_.end());

  k.gamma_nodes_.assign(m, 0.0);
  for (std::size_t i = m - 1; i-- > 0;) {
    double gi = k.values_[i] * std::exp(-mu * grid_step * static_cast<double>(i));
    double gj = k.values_[i + 1] * std::exp(-mu * grid_step * static_cast<double>(i + 1));
    k.gamma_nodes_[i] = k.gamma_nodes_[i + 1] + 0.5 * grid_step * (gi + gj);
  }
  return k;
}

double BirthKernel::beta(double a) const {
  if (!std::isfinite(a)) throw invalid_parameter("beta: age must be finite");
  if (tab_) {
    if (a <= 0.0) return a == 0.0 ? values_[0] : 0.0;
    if (a >= support_end_) return 0.0;
    double x = a / da_;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= values_.size()) i = values_.size() - 2;
    double f = x - static_cast<double>(i);
    return values_[i] * (1.0 - f) + values_[i + 1] * f;
  }
  double s = a - tau_;
  if (n_ == 0 && std::abs(s) <= kJumpTol * std::max(1.0, tau_)) return 0.5 * c0_;
  if (s < 0.0) return 0.0;
  double p = 1.0;
  for (int j = 0; j < n_; ++j) p *= s;
  return c0_ * p * std::exp(-kappa_ * s);
}

double BirthKernel::survival_weighted(double a) const { return beta(a) * std::exp(-mu_ * a); }

std::complex<double> BirthKernel::laplace(std::complex<double> lambda) const {
  if (tab_) {
    const std::size_t m = values_.size();
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
      double a = da_ * static_cast<double>(i);
      s += w * da_ * values_[i] * std::exp(-(mu_ + lambda) * a);
    }
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw numerical_error("laplace: transform overflow");
    return s;
  }
  double rate = mu_ + kappa_;
  if (lambda.real() <= -rate)
    throw domain_error("laplace: Re(lambda) must exceed -(mu + kappa)");
  std::complex<double> w = 1.0 + lambda / rate;
  std::complex<double> val = std::exp(-lambda * tau_) * std::pow(w, -(n_ + 1.0));
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    throw numerical_error("laplace: transform overflow");
  return val;
}

double BirthKernel::laplace_real(double lambda) const {
  if (tab_) {
    const std::size_t m = values_.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
      double a = da_ * static_cast<double>(i);
      s += w * da_ * values_[i] * std::exp(-(mu_ + lambda) * a);
    }
    return s;  // may be +inf for lambda far left; callers treat inf as "above target"
  }
  double rate = mu_ + kappa_;
  if (lambda <= -rate) throw domain_error("laplace: lambda must exceed -(mu + kappa)");
  return std::exp(-lambda * tau_) * std::pow(1.0 + lambda / rate, -(n_ + 1.0));
}

double BirthKernel::laplace_real_deriv(double lambda) const {
  if (tab_) {
    const std::size_t m = values_.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
      double a = da_ * static_cast<double>(i);
      s -= w * da_ * a * values_[i] * std::exp(-(mu_ + lambda) * a);
    }
    return s;
  }
  double k = laplace_real(lambda);
  if (!std::isfinite(k)) return -std::numeric_limits<double>::infinity();
  return k * (-tau_ - (n_ + 1.0) / (mu_ + kappa_ + lambda));
}

double BirthKernel::gamma_tail(double a) const {
  if (!std::isfinite(a)) throw invalid_parameter("gamma_tail: age must be finite");
  if (tab_) {
    if (a <= 0.0) return gamma_nodes_[0];
    if (a >= support_end_) return 0.0;
    double x = a / da_;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= gamma_nodes_.size()) i = gamma_nodes_.size() - 2;
    double f = x - static_cast<double>(i);
    return gamma_nodes_[i] * (1.0 - f) + gamma_nodes_[i + 1] * f;
  }
  if (a <= tau_) return 1.0;
  return poisson_tail(n_, (mu_ + kappa_) * (a - tau_));
}

double BirthKernel::reproductive_horizon() const {
  return tab_ ? support_end_ : std::numeric_limits<double>::infinity();
}

double BirthKernel::effective_horizon(double tol) const {
  if (!(tol > 0.0) || !(tol < 1.0))
    throw invalid_parameter("effective_horizon: tol must lie in (0, 1)");
  if (tab_) {
    for (std::size_t i = 0; i < gamma_nodes_.size(); ++i) {
      if (gamma_nodes_[i] < tol) {
        if (i == 0) return 0.0;
        double g0 = gamma_nodes_[i - 1], g1 = gamma_nodes_[i];
        double f = (g0 - tol) / (g0 - g1);
        return da_ * (static_cast<double>(i - 1) + f);
      }
    }
    return support_end_;
  }
  double rate = mu_ + kappa_;
  double lo = tau_;
  double hi = tau_ + (n_ + 51.0) / rate;
  for (int it = 0; it < 200 && gamma_tail(hi) >= tol; ++it) hi = tau_ + 2.0 * (hi - tau_);
  if (gamma_tail(hi) >= tol) throw numerical_error("effective_horizon: bracketing failed");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (gamma_tail(mid) >= tol ? lo : hi) = mid;
  }
  return hi;
}

double BirthKernel::beta_sup() const {
  if (tab_) return vmax_;
  if (n_ == 0) return c0_;
  return c0_ * std::pow(n_ / kappa_, n_) * std::exp(-static_cast<double>(n_));
}

double BirthKernel::tau() const {
  if (tab_) throw invalid_parameter("tau: not a shifted Gamma kernel");
  return tau_;
}
double BirthKernel::kappa() const {
  if (tab_) throw invalid_parameter("kappa: not a shifted Gamma kernel");
  return kappa_;
}
int BirthKernel::shape_n() const {
  if (tab_) throw invalid_parameter("shape_n: not a shifted Gamma kernel");
  return n_;
}
double BirthKernel::amplitude() const {
  if (tab_) throw invalid_parameter("amplitude: not a shifted Gamma kernel");
  return c0_;
}
double BirthKernel::grid_step() const {
  if (!tab_) throw invalid_parameter("grid_step: not a tabulated kernel");
  return da_;
}
const std::vector<double>& BirthKernel::node_values() const {
  if (!tab_) throw invalid_parameter("node_values: not a tabulated kernel");
  return values_;
}

}  // namespace gmlab
