#pragma once

#include <complex>
#include <vector>

namespace gmlab {

// Maternity kernel of the age-structured model, tied to a mortality rate mu
// and normalized at construction so that  int_0^inf beta(a) e^{-mu a} da = 1.
//
// Two shapes:
//   shifted Gamma   beta(a) = C0 (a-tau)^n e^{-kappa (a-tau)},  a >= tau,
//   tabulated       piecewise-linear values on a uniform age grid starting
//                   at a = 0, compactly supported.
class BirthKernel {
 public:
  static BirthKernel shifted_gamma(double tau, double kappa, int n, double mu);
  static BirthKernel tabulated(double grid_step, std::vector<double> values, double mu);

  double mu() const { return mu_; }
  bool is_tabulated() const { return tab_; }

  // beta(a).  At a jump of the shifted Gamma density (n = 0, a = tau) the
  // midpoint value C0/2 is returned so node-based trapezoid sums keep
  // second-order accuracy across the jump.
  double beta(double a) const;

  // g(a) = beta(a) e^{-mu a}; integrates to 1 over [0, inf).
  double survival_weighted(double a) const;

  // K(lambda) = int_0^inf beta(a) e^{-(mu+lambda) a} da.
  // Shifted Gamma kernels require Re(lambda) > -(mu + kappa).
  std::complex<double> laplace(std::complex<double> lambda) const;
  double laplace_real(double lambda) const;
  double laplace_real_deriv(double lambda) const;

  // gamma(a) = int_a^inf beta(s) e^{-mu s} ds, decreasing from gamma(0) = 1.
  double gamma_tail(double a) const;

  // End of the reproductive age window: +inf for shifted Gamma kernels,
  // the tightened support end for tabulated ones.
  double reproductive_horizon() const;

  // Smallest age H with gamma_tail(H) < tol.
  double effective_horizon(double tol) const;

  double beta_sup() const;

  // Shifted-Gamma accessors; throw invalid_parameter on tabulated kernels.
  double tau() const;
  double kappa() const;
  int shape_n() const;
  double amplitude() const;  // C0

  // Tabulated accessors; throw invalid_parameter on shifted Gamma kernels.
  double grid_step() const;
  const std::vector<double>& node_values() const;

 private:
  BirthKernel() = default;

  double mu_ = 0.0;
  bool tab_ = false;

  // shifted Gamma
  double tau_ = 0.0, kappa_ = 0.0, c0_ = 0.0;
  int n_ = 0;

  // tabulated
  double da_ = 0.0, support_end_ = 0.0, vmax_ = 0.0;
  std::vector<double> values_;       // beta at grid nodes
  std::vector<double> gamma_nodes_;  // gamma_tail at grid nodes
};

}  // namespace gmlab
