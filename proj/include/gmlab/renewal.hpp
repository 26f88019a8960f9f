#pragma once

#include <functional>
#include <vector>

#include "gmlab/kernel.hpp"
#include "gmlab/profile.hpp"

namespace gmlab {

struct ModelParams {
  double alpha;
  double mu;
  BirthKernel kernel;

  ModelParams(double alpha_, BirthKernel kernel_);
  // cross-checks mu against the rate the kernel was normalized with
  ModelParams(double alpha_, double mu_, BirthKernel kernel_);
};

struct SimConfig {
  double dt = 0.01;
  double horizon = 200.0;
  double a_max = 0.0;  // 0 = choose automatically from u0 and the kernel
};

struct Trajectory {
  double dt = 0.0;
  std::vector<double> b;  // birth rate at t_i = i * dt
  std::vector<double> U;  // total population (empty unless produced by solve_*)
  std::vector<double> V;  // Lyapunov values (empty until attach_lyapunov)

  std::size_t steps() const { return b.empty() ? 0 : b.size() - 1; }
  double time(std::size_t i) const { return dt * static_cast<double>(i); }
  double horizon() const { return time(steps()); }
};

// alpha * x * e^{-x}; throws domain_error for x < 0
double ricker(double alpha, double x);

// March the renewal equation
//   b(t) = alpha f( F(t) + int_0^t g(a) b(t-a) da ),   g(a) = beta(a) e^{-mu a},
// with F the forcing carried by the initial profile, using trapezoid
// quadrature on a uniform grid.  When g(0) > 0 each step solves its scalar
// fixed point to residual 1e-12.  The total population is accumulated with
// the exact integrating factor of  U' = b - mu U,  which keeps its weights
// nonnegative and the dissipativity bound structural.
Trajectory solve_renewal(const ModelParams& params, const AgeProfile& u0, const SimConfig& cfg);

// Same march with the linear birth law b = m * (...); used for comparison
// systems and spectral checks.  Requires m > 0.
Trajectory solve_linear(double m, const BirthKernel& kernel, const AgeProfile& u0,
                        const SimConfig& cfg);

// u(t, a) along characteristics: e^{-mu a} b(t-a) for a < t, the aged initial
// profile for a >= t.  t must be a grid multiple of traj.dt.
AgeProfile reconstruct_profile(const AgeProfile& u0, const Trajectory& traj, double mu, double t);

// Pure-delay limit: b(t) = alpha f(b(t - tau)) with prescribed history on
// [-tau, 0).  dt must divide tau.
Trajectory simulate_difference_limit(double alpha, double tau,
                                     const std::function<double(double)>& history, double dt,
                                     double horizon);

}  // namespace gmlab
