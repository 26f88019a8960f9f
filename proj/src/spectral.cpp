#include "gmlab/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gmlab/errors.hpp"
#include "gmlab/rootfind.hpp"

namespace gmlab {

namespace {

// log of sum_{j<=n} y^j / j! for y >= 0
double log_poly_sum(int n, double y) {
  if (y <= 0.0) return 0.0;
  if (y < 700.0) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= n; ++j) {
      term *= y / j;
      sum += term;
    }
    return std::log(sum);
  }
  double ly = std::log(y);
  double m = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= n; ++j) m = std::max(m, j * ly - std::lgamma(j + 1.0));
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += std::exp(j * ly - std::lgamma(j + 1.0) - m);
  return m + std::log(s);
}

void validate_family(double tau, double kappa, int n, double mu, const char* who) {
  if (!(tau > 0.0)) throw invalid_parameter(std::string(who) + ": tau must be positive");
  if (!(mu > 0.0)) throw invalid_parameter(std::string(who) + ": mu must be positive");
  if (kappa < 0.0) throw invalid_parameter(std::string(who) + ": kappa must be nonnegative");
  if (n < 0) throw invalid_parameter(std::string(who) + ": n must be nonnegative");
  if (kappa == 0.0 && n > 0) throw invalid_parameter(std::string(who) + ": kappa = 0 requires n = 0");
}

}  // namespace

std::complex<double> char_residual(std::complex<double> lambda, double alpha,
                                   const BirthKernel& kernel) {
  if (!(alpha > 0.0)) throw invalid_parameter("char_residual: alpha must be positive");
  return 1.0 - (1.0 - std::log(alpha)) * kernel.laplace(lambda);
}

CharRoot dominant_eigenvalue(double m, const BirthKernel& kernel) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw invalid_parameter("dominant_eigenvalue: multiplier must be positive");

  double lo = kernel.is_tabulated() ? -10.0 * kernel.mu()
                                    : -(kernel.mu() + kernel.kappa()) * (1.0 - 1e-9);
  auto f = [&](double lam) { return m * kernel.laplace_real(lam) - 1.0; };
  double f_lo = f(lo);
  if (!(f_lo > 0.0))
    throw domain_error("dominant_eigenvalue: root lies left of the searchable range");

  double hi = std::max(1.0, lo + 1.0);
  double f_hi = f(hi);
  for (int it = 0; it < 200 && f_hi > 0.0; ++it) {
    hi *= 2.0;
    f_hi = f(hi);
  }
  if (f_hi > 0.0) throw numerical_error("dominant_eigenvalue: bracketing failed");

  auto res = newton_bisect(f, [&](double lam) { return m * kernel.laplace_real_deriv(lam); }, lo,
                           hi, f_lo, f_hi, 1e-13, 0.0, 300, "dominant_eigenvalue");
  return {res.x, m};
}

double adjoint_eigenfunction(const BirthKernel& kernel, double m, double lambda, double a) {
  if (!(m > 0.0)) throw invalid_parameter("adjoint: multiplier must be positive");
  if (a < 0.0) throw invalid_parameter("adjoint: age must be nonnegative");
  double mu = kernel.mu();

  if (kernel.is_tabulated()) {
    double end = kernel.reproductive_horizon();
    if (a >= end) return 0.0;
    double da = kernel.grid_step();
    const std::vector<double>& v = kernel.node_values();
    auto decay = [&](double s) { return std::exp(-(mu + lambda) * (s - a)); };
    auto i0 = static_cast<std::size_t>(std::ceil(a / da - 1e-12));
    double s = 0.0;
    if (da * static_cast<double>(i0) > a && i0 < v.size()) {
      double left = kernel.beta(a);
      double right = v[i0] * decay(da * static_cast<double>(i0));
      s += 0.5 * (da * static_cast<double>(i0) - a) * (left + right);
    }
    for (std::size_t i = i0; i + 1 < v.size(); ++i) {
      double s0 = da * static_cast<double>(i), s1 = s0 + da;
      s += 0.5 * da * (v[i] * decay(s0) + v[i + 1] * decay(s1));
    }
    return m * s;
  }

  double tau = kernel.tau(), kappa = kernel.kappa();
  int n = kernel.shape_n();
  double q = mu + lambda + kappa;
  if (!(q > 0.0)) throw domain_error("adjoint: lambda must exceed -(mu + kappa)");
  if (a <= tau) return m * kernel.laplace_real(lambda) * std::exp((mu + lambda) * a);
  double x = a - tau;
  double log_pref = std::log(m) + mu * tau + (n + 1) * (std::log(mu + kappa) - std::log(q));
  return std::exp(log_pref - kappa * x + log_poly_sum(n, q * x));
}

double hopf_frequency(int k, double tau, double kappa, int n, double mu) {
  validate_family(tau, kappa, n, mu, "hopf_frequency");
  if (k < 0) throw invalid_parameter("hopf_frequency: k must be nonnegative");
  double rate = mu + kappa;
  double target = (2.0 * k + 1.0) * std::numbers::pi;
  auto f = [&](double w) { return w * tau + (n + 1) * std::atan(w / rate) - target; };
  auto df = [&](double w) { return tau + (n + 1) * rate / (rate * rate + w * w); };
  double hi = target / tau;
  auto res = newton_bisect(f, df, 0.0, hi, -target, f(hi), 1e-12, 0.0, 200, "hopf_frequency");
  return res.x;
}

double hopf_alpha(double omega, double kappa, int n, double mu) {
  if (!(mu > 0.0) || kappa < 0.0 || n < 0 || !(omega >= 0.0))
    throw invalid_parameter("hopf_alpha: bad arguments");
  double rate = mu + kappa;
  double expo = 1.0 + std::pow(1.0 + omega * omega / (rate * rate), 0.5 * (n + 1));
  if (expo > 709.0) throw numerical_error("hopf_alpha: alpha overflows double range");
  return std::exp(expo);
}

double transversality(double omega, double alpha, double tau, double kappa, int n, double mu) {
  validate_family(tau, kappa, n, mu, "transversality");
  if (!(alpha > 0.0) || std::abs(std::log(alpha) - 1.0) < 1e-12)
    throw domain_error("transversality: alpha at or too close to e");
  double rate = mu + kappa;
  double dd_den = rate * rate + omega * omega;
  // dDelta/dlambda at (i omega, alpha) on the locus, where (1 - ln a) K = 1
  std::complex<double> dd(tau + (n + 1) * rate / dd_den, -(n + 1) * omega / dd_den);
  double nrm = std::norm(dd);
  if (!(nrm > 0.0)) throw numerical_error("transversality: degenerate characteristic derivative");
  double d_alpha = 1.0 / (alpha * (1.0 - std::log(alpha)));
  return -d_alpha * dd.real() / nrm;
}

std::vector<HopfPoint> hopf_locus(int k_max, double tau, double kappa, int n, double mu) {
  validate_family(tau, kappa, n, mu, "hopf_locus");
  if (k_max < 0) throw invalid_parameter("hopf_locus: k_max must be nonnegative");
  BirthKernel kernel = BirthKernel::shifted_gamma(tau, kappa, n, mu);
  std::vector<HopfPoint> out;
  out.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    double w = hopf_frequency(k, tau, kappa, n, mu);
    double a = hopf_alpha(w, kappa, n, mu);
    double t = transversality(w, a, tau, kappa, n, mu);
    std::complex<double> r = char_residual(std::complex<double>(0.0, w), a, kernel);
    if (std::abs(r) > 1e-8)
      throw numerical_error("hopf_locus: characteristic cross-check failed at k=" +
                            std::to_string(k));
    if (!out.empty() && !(a > out.back().alpha))
      throw numerical_error("hopf_locus: alpha sequence not increasing at k=" + std::to_string(k));
    out.push_back({k, w, a, t});
  }
  return out;
}

}  // namespace gmlab
