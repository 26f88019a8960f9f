#pragma once

#include <complex>
#include <vector>

#include "gmlab/kernel.hpp"

namespace gmlab {

struct CharRoot {
  double lambda;
  double multiplier;  // the m that lambda solves m * K(lambda) = 1 for
};

struct HopfPoint {
  int k;
  double omega;
  double alpha;
  double transversality_re;  // Re(dlambda/dalpha) along the curve at the crossing
};

// Characteristic function of the linearization at the positive equilibrium,
//   Delta(lambda) = 1 - (1 - ln alpha) K(lambda).
std::complex<double> char_residual(std::complex<double> lambda, double alpha,
                                   const BirthKernel& kernel);

// The unique real root of m * K(lambda) = 1 in the kernel's Laplace domain.
// Throws domain_error when the root lies left of the searchable range.
CharRoot dominant_eigenvalue(double m, const BirthKernel& kernel);

// Gamma_lambda(a) = m int_a^inf e^{-(mu+lambda)(s-a)} beta(s) e^{-mu a} ... ds,
// the adjoint weight whose pairing with u(t, .) drifts like e^{lambda t}.
double adjoint_eigenfunction(const BirthKernel& kernel, double m, double lambda, double a);

// k-th positive root of  omega tau + (n+1) arctan(omega / (mu+kappa)) = (2k+1) pi.
double hopf_frequency(int k, double tau, double kappa, int n, double mu);

// alpha on the Hopf curve at frequency omega:
//   alpha = exp(1 + (1 + omega^2/(mu+kappa)^2)^{(n+1)/2}).
double hopf_alpha(double omega, double kappa, int n, double mu);

// Re(dlambda/dalpha) = Re(-(dDelta/dalpha) / (dDelta/dlambda)) at (i omega, alpha).
double transversality(double omega, double alpha, double tau, double kappa, int n, double mu);

// Hopf points k = 0..k_max for the shifted Gamma family, each cross-checked
// against the characteristic function.
std::vector<HopfPoint> hopf_locus(int k_max, double tau, double kappa, int n, double mu);

}  // namespace gmlab
