#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmlab/kernel.hpp"
#include "gmlab/profile.hpp"
#include "gmlab/renewal.hpp"

namespace gmlab {

struct Equilibrium {
  double u_bar0;  // stationary birth rate, ln(alpha)
  AgeProfile profile;
};

// Stationary age density ubar(a) = ln(alpha) e^{-mu a} on the given grid.
// Throws domain_error when alpha <= 1 (no positive equilibrium).
Equilibrium positive_equilibrium(double alpha, double mu, double da, double a_max);

struct SubdomainClass {
  bool interior;             // carries mass inside the reproductive window
  double reproductive_mass;  // int_0^{min(horizon, extent)} u0
  double total_mass;
};

SubdomainClass classify_initial(const AgeProfile& u0, const BirthKernel& kernel);

// Memory window of the Lyapunov functional, rounded up to a grid multiple:
// the reproductive horizon for tabulated kernels, the age where gamma_tail
// drops below 1e-12 for shifted Gamma ones.
double lyapunov_horizon(const BirthKernel& kernel, double dt);

// V(t) = int_0^H gamma(a) (b(t-a)/u_bar0 - 1)^2 da along a solved trajectory.
// Throws insufficient_history for t < H and domain_error when u_bar0 <= 0.
double lyapunov_value(const Trajectory& traj, const BirthKernel& kernel, double u_bar0, double t);

// Fills traj.V at every grid time (NaN before one full memory window).
void attach_lyapunov(Trajectory& traj, const BirthKernel& kernel, double u_bar0);

// |u - ln(alpha)| - |alpha f(u) - ln(alpha)|, nonnegative on the global
// stability range 1 < alpha <= e^2; throws domain_error outside it.
double fisher_goh_gap(double alpha, double u);

struct DissipativityReport {
  double u_start;
  double cap;            // alpha / (e mu)
  double max_violation;  // max_t U(t) - (U(0) e^{-mu t} + cap (1 - e^{-mu t}))
  double slack;
  bool pass;
};

DissipativityReport dissipativity_check(const Trajectory& traj, double alpha, double mu);

// First grid time after which b stays strictly above tol through the end of
// the trajectory; nullopt when b ends at or below tol.
std::optional<double> eventual_positivity_time(const Trajectory& traj, double tol = 0.0);

// min of U over the trailing window [horizon - window, horizon];
// requires 0 < window <= horizon / 2.
double persistence_floor(const Trajectory& traj, double window);

struct CheckResult {
  std::string name;
  bool pass;
  double measured;
  double threshold;
};

struct BatteryReport {
  std::vector<CheckResult> checks;
  Trajectory trajectory;
  bool all_pass() const;
};

// Solves the model and runs the invariant battery: pointwise birth cap,
// dissipativity of the total population, equilibrium identity, the
// subdomain dichotomy (extinction vs eventual positivity and persistence),
// and Lyapunov monotonicity on the global stability range.
BatteryReport run_battery(const ModelParams& params, const AgeProfile& u0, const SimConfig& cfg);

}  // namespace gmlab
