#include "gmlab/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmlab/errors.hpp"
#include "gmlab/rootfind.hpp"

namespace gmlab {

namespace {

constexpr double kGridTol = 1e-9;
constexpr double kWindowTol = 1e-14;  // gamma mass ignored by the truncated convolution
constexpr double kStepResidual = 1e-12;

void validate_sim_config(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw invalid_parameter("sim config: dt must be positive");
  if (!(cfg.horizon >= cfg.dt) || !std::isfinite(cfg.horizon))
    throw invalid_parameter("sim config: horizon must be at least dt");
  if (cfg.a_max < 0.0 || !std::isfinite(cfg.a_max))
    throw invalid_parameter("sim config: a_max must be nonnegative");
}

double pick_a_max(const BirthKernel& kernel, const AgeProfile& u0, const SimConfig& cfg) {
  if (cfg.a_max > 0.0) return cfg.a_max;
  double a = std::max(u0.extent(), 30.0 / kernel.mu());
  if (kernel.is_tabulated()) a = std::max(a, kernel.reproductive_horizon());
  return a;
}

struct Discretization {
  double dt;
  std::size_t n_steps;            // trajectory has n_steps + 1 samples
  std::vector<double> u0;         // initial profile resampled onto the dt grid
  std::vector<double> g;          // survival-weighted kernel on the truncated window
  std::vector<double> forcing;    // F(t_i), i = 0..n_steps
};

Discretization discretize(const BirthKernel& kernel, const AgeProfile& u0_in,
                          const SimConfig& cfg) {
  validate_sim_config(cfg);
  validate_profile(u0_in);
  if (kernel.is_tabulated()) {
    double q = cfg.dt / kernel.grid_step();
    if (std::abs(q - std::round(q)) > kGridTol * std::max(1.0, q))
      throw validation_error("dt", "tabulated kernel grid must evenly divide dt");
  }

  Discretization d;
  d.dt = cfg.dt;
  d.n_steps = static_cast<std::size_t>(std::floor(cfg.horizon / cfg.dt + kGridTol));

  double a_max = pick_a_max(kernel, u0_in, cfg);
  auto m = static_cast<std::size_t>(std::llround(a_max / cfg.dt));
  if (m < 1) m = 1;
  d.u0 = resample(u0_in, cfg.dt, m).values;

  // One pass over beta on the union grid feeds both the convolution window
  // and the forcing integral.
  double window_end = kernel.is_tabulated() ? kernel.reproductive_horizon()
                                            : kernel.effective_horizon(kWindowTol);
  auto j_max = static_cast<std::size_t>(std::ceil(window_end / cfg.dt - kGridTol));
  j_max = std::min(j_max, d.n_steps);

  std::vector<double> beta_ext(d.n_steps + m + 1);
  for (std::size_t j = 0; j < beta_ext.size(); ++j)
    beta_ext[j] = kernel.beta(cfg.dt * static_cast<double>(j));

  d.g.resize(j_max + 1);
  for (std::size_t j = 0; j <= j_max; ++j)
    d.g[j] = beta_ext[j] * std::exp(-kernel.mu() * cfg.dt * static_cast<double>(j));

  d.forcing.resize(d.n_steps + 1);
  for (std::size_t n = 0; n <= d.n_steps; ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      double w = (i == 0 || i == m) ? 0.5 : 1.0;
      s += w * d.u0[i] * beta_ext[i + n];
    }
    d.forcing[n] = cfg.dt * s * std::exp(-kernel.mu() * cfg.dt * static_cast<double>(n));
  }
  return d;
}

// birth(y) must be increasing-then-bounded on y >= 0 with a known sup
template <class Birth>
std::vector<double> march(const Discretization& d, Birth birth, double birth_sup) {
  const std::vector<double>& g = d.g;
  const double dt = d.dt;
  const std::size_t window = g.size() - 1;

  std::vector<double> b(d.n_steps + 1);
  b[0] = birth(d.forcing[0]);
  for (std::size_t n = 1; n <= d.n_steps; ++n) {
    std::size_t jn = std::min(n, window);
    double s = 0.5 * g[jn] * b[n - jn];
    for (std::size_t j = 1; j < jn; ++j) s += g[j] * b[n - j];
    double c = d.forcing[n] + dt * s;
    double self = 0.5 * dt * g[0];
    if (self == 0.0) {
      b[n] = birth(c);
    } else {
      auto res = [&](double x) { return x - birth(c + self * x); };
      double hi = birth_sup + 1.0;
      b[n] = newton_bisect(
                 res,
                 [&](double x) {
                   double h = 1e-7 * std::max(1.0, std::abs(x));
                   return (res(x + h) - res(x - h)) / (2.0 * h);
                 },
                 0.0, hi, res(0.0), res(hi), kStepResidual, 0.0, 200, "renewal step")
                 .x;
    }
  }
  return b;
}

// U' = b - mu U integrated exactly against piecewise-linear b; both weights
// are nonnegative for every mu * dt > 0.
std::vector<double> accumulate_population(const std::vector<double>& b, double mu, double dt,
                                          double u_start) {
  double e = std::exp(-mu * dt);
  double c1 = (mu * dt - 1.0 + e) / (mu * mu * dt);
  double c0 = (1.0 - e - mu * dt * e) / (mu * mu * dt);
  std::vector<double> u(b.size());
  u[0] = u_start;
  for (std::size_t n = 1; n < b.size(); ++n) u[n] = e * u[n - 1] + c0 * b[n - 1] + c1 * b[n];
  return u;
}

double trapz_mass(const std::vector<double>& v, double dt) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
    s += w * dt * v[i];
  }
  return s;
}

}  // namespace

ModelParams::ModelParams(double alpha_, BirthKernel kernel_)
    : alpha(alpha_), mu(kernel_.mu()), kernel(std::move(kernel_)) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw invalid_parameter("model: alpha must be positive");
}

ModelParams::ModelParams(double alpha_, double mu_, BirthKernel kernel_)
    : ModelParams(alpha_, std::move(kernel_)) {
  if (!(std::abs(mu_ - mu) <= 1e-12 * std::max(1.0, mu)))
    throw invalid_parameter("model: mu does not match the kernel's mortality rate");
}

double ricker(double alpha, double x) {
  if (x < 0.0) throw domain_error("ricker: negative argument");
  return alpha * x * std::exp(-x);
}

Trajectory solve_renewal(const ModelParams& params, const AgeProfile& u0, const SimConfig& cfg) {
  Discretization d = discretize(params.kernel, u0, cfg);
  double alpha = params.alpha;
  Trajectory out;
  out.dt = cfg.dt;
  out.b = march(
      d, [alpha](double y) { return ricker(alpha, y); }, alpha / std::exp(1.0));
  out.U = accumulate_population(out.b, params.mu, cfg.dt, trapz_mass(d.u0, cfg.dt));
  return out;
}

Trajectory solve_linear(double m, const BirthKernel& kernel, const AgeProfile& u0,
                        const SimConfig& cfg) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw invalid_parameter("solve_linear: multiplier must be positive");
  Discretization d = discretize(kernel, u0, cfg);
  // the linear step is solvable in closed form, but only below the blow-up
  // threshold of the implicit half-weight
  double self = 0.5 * cfg.dt * d.g.front();
  if (m * self >= 1.0) throw numerical_error("solve_linear: implicit step not solvable, reduce dt");
  Trajectory out;
  out.dt = cfg.dt;
  std::vector<double> b(d.n_steps + 1);
  b[0] = m * d.forcing[0];
  const std::size_t window = d.g.size() - 1;
  for (std::size_t n = 1; n <= d.n_steps; ++n) {
    std::size_t jn = std::min(n, window);
    double s = 0.5 * d.g[jn] * b[n - jn];
    for (std::size_t j = 1; j < jn; ++j) s += d.g[j] * b[n - j];
    double c = d.forcing[n] + cfg.dt * s;
    b[n] = m * c / (1.0 - m * self);
  }
  out.b = std::move(b);
  out.U = accumulate_population(out.b, kernel.mu(), cfg.dt, trapz_mass(d.u0, cfg.dt));
  return out;
}

AgeProfile reconstruct_profile(const AgeProfile& u0, const Trajectory& traj, double mu, double t) {
  validate_profile(u0);
  if (traj.b.empty() || !(traj.dt > 0.0)) throw invalid_parameter("reconstruct: empty trajectory");
  double ratio = t / traj.dt;
  auto n = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - std::round(ratio)) > kGridTol * std::max(1.0, ratio) || n >= traj.b.size())
    throw invalid_parameter("reconstruct: t must be a grid time within the trajectory");

  auto m = static_cast<std::size_t>(std::llround(u0.extent() / traj.dt));
  if (m < 1) m = 1;
  AgeProfile ur = resample(u0, traj.dt, m);
  AgeProfile out;
  out.da = traj.dt;
  out.values.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    if (j < n)
      out.values[j] = std::exp(-mu * traj.dt * static_cast<double>(j)) * traj.b[n - j];
    else
      out.values[j] = std::exp(-mu * t) * ur.values[j - n];
  }
  return out;
}

Trajectory simulate_difference_limit(double alpha, double tau,
                                     const std::function<double(double)>& history, double dt,
                                     double horizon) {
  if (!(alpha > 0.0)) throw invalid_parameter("difference limit: alpha must be positive");
  if (!(tau > 0.0)) throw invalid_parameter("difference limit: tau must be positive");
  if (!(dt > 0.0) || !(horizon >= dt)) throw invalid_parameter("difference limit: bad grid");
  double ratio = tau / dt;
  auto k = static_cast<std::size_t>(std::llround(ratio));
  if (k == 0 || std::abs(ratio - std::round(ratio)) > kGridTol * std::max(1.0, ratio))
    throw validation_error("dt", "dt must evenly divide tau");

  auto n_steps = static_cast<std::size_t>(std::floor(horizon / dt + kGridTol));
  Trajectory out;
  out.dt = dt;
  out.b.resize(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    double prev = i < k ? history(dt * (static_cast<double>(i) - static_cast<double>(k)))
                        : out.b[i - k];
    out.b[i] = ricker(alpha, prev);
  }
  return out;
}

}  // namespace gmlab
