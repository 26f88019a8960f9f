#include "gmlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmlab/errors.hpp"

namespace gmlab {

namespace {

constexpr double kGridTol = 1e-9;
constexpr double kLyapunovTailTol = 1e-12;
constexpr double kInteriorMassTol = 1e-14;
constexpr double kRegimeTol = 1e-12;

// integral of the linear interpolant of u over [0, min(end, extent)]
double mass_below(const AgeProfile& u, double end) {
  end = std::min(end, u.extent());
  if (!(end > 0.0)) return 0.0;
  auto full = static_cast<std::size_t>(end / u.da + 1e-12);
  full = std::min(full, u.values.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < full; ++i) s += 0.5 * u.da * (u.values[i] + u.values[i + 1]);
  double rest = end - u.da * static_cast<double>(full);
  if (rest > 0.0 && full + 1 < u.values.size())
    s += 0.5 * rest * (u.values[full] + u.at(end));
  return s;
}

std::size_t lyapunov_window_steps(const BirthKernel& kernel, double dt) {
  if (!(dt > 0.0)) throw invalid_parameter("lyapunov: dt must be positive");
  double h = kernel.is_tabulated() ? kernel.reproductive_horizon()
                                   : kernel.effective_horizon(kLyapunovTailTol);
  return static_cast<std::size_t>(std::ceil(h / dt - kGridTol));
}

std::vector<double> lyapunov_weights(const BirthKernel& kernel, double dt, std::size_t jh) {
  std::vector<double> gw(jh + 1);
  for (std::size_t j = 0; j <= jh; ++j) {
    double w = (j == 0 || j == jh) ? 0.5 : 1.0;
    gw[j] = w * dt * kernel.gamma_tail(dt * static_cast<double>(j));
  }
  return gw;
}

}  // namespace

Equilibrium positive_equilibrium(double alpha, double mu, double da, double a_max) {
  if (!(alpha > 1.0)) throw domain_error("positive_equilibrium: requires alpha > 1");
  return {std::log(alpha), equilibrium_profile(alpha, mu, da, a_max)};
}

SubdomainClass classify_initial(const AgeProfile& u0, const BirthKernel& kernel) {
  validate_profile(u0);
  double total = mass_below(u0, u0.extent());
  double rep = mass_below(u0, kernel.reproductive_horizon());
  return {rep > kInteriorMassTol * total, rep, total};
}

double lyapunov_horizon(const BirthKernel& kernel, double dt) {
  return dt * static_cast<double>(lyapunov_window_steps(kernel, dt));
}

double lyapunov_value(const Trajectory& traj, const BirthKernel& kernel, double u_bar0, double t) {
  if (!(u_bar0 > 0.0)) throw domain_error("lyapunov: ratio undefined, u_bar0 must be positive");
  if (traj.b.empty() || !(traj.dt > 0.0)) throw invalid_parameter("lyapunov: empty trajectory");
  std::size_t jh = lyapunov_window_steps(kernel, traj.dt);
  double ratio = t / traj.dt;
  auto n = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - std::round(ratio)) > kGridTol * std::max(1.0, ratio) || n >= traj.b.size())
    throw invalid_parameter("lyapunov: t must be a grid time within the trajectory");
  if (n < jh)
    throw insufficient_history("lyapunov: need one full memory window of history");
  std::vector<double> gw = lyapunov_weights(kernel, traj.dt, jh);
  double v = 0.0;
  for (std::size_t j = 0; j <= jh; ++j) {
    double d = traj.b[n - j] / u_bar0 - 1.0;
    v += gw[j] * d * d;
  }
  return v;
}

void attach_lyapunov(Trajectory& traj, const BirthKernel& kernel, double u_bar0) {
  if (!(u_bar0 > 0.0)) throw domain_error("lyapunov: ratio undefined, u_bar0 must be positive");
  if (traj.b.empty() || !(traj.dt > 0.0)) throw invalid_parameter("lyapunov: empty trajectory");
  std::size_t jh = lyapunov_window_steps(kernel, traj.dt);
  std::vector<double> gw = lyapunov_weights(kernel, traj.dt, jh);
  traj.V.assign(traj.b.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t n = jh; n < traj.b.size(); ++n) {
    double v = 0.0;
    for (std::size_t j = 0; j <= jh; ++j) {
      double d = traj.b[n - j] / u_bar0 - 1.0;
      v += gw[j] * d * d;
    }
    traj.V[n] = v;
  }
}

double fisher_goh_gap(double alpha, double u) {
  if (!(alpha > 1.0) || alpha > std::exp(2.0) * (1.0 + kRegimeTol))
    throw domain_error("fisher_goh_gap: alpha outside (1, e^2]");
  if (u < 0.0) throw domain_error("fisher_goh_gap: u must be nonnegative");
  double la = std::log(alpha);
  return std::abs(u - la) - std::abs(ricker(alpha, u) - la);
}

DissipativityReport dissipativity_check(const Trajectory& traj, double alpha, double mu) {
  if (traj.U.empty() || !(traj.dt > 0.0))
    throw invalid_parameter("dissipativity: trajectory has no population history");
  if (!(alpha > 0.0) || !(mu > 0.0)) throw invalid_parameter("dissipativity: bad parameters");
  DissipativityReport r;
  r.u_start = traj.U[0];
  r.cap = alpha / (std::exp(1.0) * mu);
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < traj.U.size(); ++n) {
    double decay = std::exp(-mu * traj.time(n));
    double bound = r.u_start * decay + r.cap * (1.0 - decay);
    r.max_violation = std::max(r.max_violation, traj.U[n] - bound);
  }
  r.slack = 1e-6 * (r.u_start + r.cap);
  r.pass = r.max_violation <= r.slack;
  return r;
}

std::optional<double> eventual_positivity_time(const Trajectory& traj, double tol) {
  if (traj.b.empty()) throw invalid_parameter("positivity: empty trajectory");
  std::size_t last = traj.b.size() - 1;
  if (traj.b[last] <= tol) return std::nullopt;
  std::size_t i = last;
  while (i > 0 && traj.b[i - 1] > tol) --i;
  return traj.time(i);
}

double persistence_floor(const Trajectory& traj, double window) {
  if (traj.U.empty() || !(traj.dt > 0.0))
    throw invalid_parameter("persistence: trajectory has no population history");
  double horizon = traj.horizon();
  if (!(window > 0.0) || !(2.0 * window <= horizon))
    throw invalid_parameter("persistence: window must lie in (0, horizon/2]");
  auto i0 = static_cast<std::size_t>(std::ceil((horizon - window) / traj.dt - kGridTol));
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = i0; i < traj.U.size(); ++i) m = std::min(m, traj.U[i]);
  return m;
}

bool BatteryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

BatteryReport run_battery(const ModelParams& params, const AgeProfile& u0, const SimConfig& cfg) {
  BatteryReport rep;
  rep.trajectory = solve_renewal(params, u0, cfg);
  const Trajectory& traj = rep.trajectory;
  double alpha = params.alpha;

  double cap = alpha / std::exp(1.0);
  double worst_b = *std::max_element(traj.b.begin(), traj.b.end());
  rep.checks.push_back({"ricker_bound", worst_b - cap <= 1e-12 * cap, worst_b - cap, 1e-12 * cap});

  DissipativityReport d = dissipativity_check(traj, alpha, params.mu);
  rep.checks.push_back({"dissipativity", d.pass, d.max_violation, d.slack});

  if (alpha > 1.0) {
    double la = std::log(alpha);
    double dev = std::abs(ricker(alpha, la) - la);
    double thr = 1e-14 * std::max(1.0, la);
    rep.checks.push_back({"equilibrium_identity", dev <= thr, dev, thr});
  }

  SubdomainClass cls = classify_initial(u0, params.kernel);
  if (!cls.interior) {
    double worst = 0.0;
    for (double x : traj.b) worst = std::max(worst, std::abs(x));
    rep.checks.push_back({"boundary_extinction", worst == 0.0, worst, 0.0});
    if (traj.U[0] > 0.0) {
      double drift = 0.0;
      for (std::size_t n = 0; n < traj.U.size(); ++n)
        drift = std::max(drift,
                         std::abs(traj.U[n] * std::exp(params.mu * traj.time(n)) / traj.U[0] - 1.0));
      rep.checks.push_back({"boundary_decay", drift <= 1e-8, drift, 1e-8});
    }
  } else {
    auto t0 = eventual_positivity_time(traj);
    rep.checks.push_back({"interior_positivity", t0.has_value(),
                          t0.value_or(std::numeric_limits<double>::quiet_NaN()), traj.horizon()});
    double window = std::min(50.0, 0.25 * traj.horizon());
    double floor = persistence_floor(traj, window);
    rep.checks.push_back({"interior_persistence", floor > 0.0, floor, 0.0});

    if (alpha > 1.0 && alpha <= std::exp(2.0) * (1.0 + kRegimeTol)) {
      std::size_t jh = lyapunov_window_steps(params.kernel, traj.dt);
      if (jh + 1 < traj.b.size()) {
        Trajectory& tr = rep.trajectory;
        attach_lyapunov(tr, params.kernel, std::log(alpha));
        double worst_rel = -std::numeric_limits<double>::infinity();
        for (std::size_t n = jh; n + 1 < tr.V.size(); ++n)
          worst_rel = std::max(worst_rel, (tr.V[n + 1] - tr.V[n]) / (1.0 + tr.V[n]));
        rep.checks.push_back({"lyapunov_monotone", worst_rel <= 1e-6, worst_rel, 1e-6});
      }
    }
  }
  return rep;
}

}  // namespace gmlab
