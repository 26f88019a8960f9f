#pragma once

#include <vector>

#include "gmlab/kernel.hpp"

namespace gmlab {

// Age density sampled on the uniform grid a_j = j * da, j = 0..values.size()-1.
// Values between nodes are read by linear interpolation; the density is zero
// beyond the last node.
struct AgeProfile {
  double da = 0.0;
  std::vector<double> values;

  double extent() const { return values.empty() ? 0.0 : da * static_cast<double>(values.size() - 1); }
  // linear interpolation, zero outside [0, extent]
  double at(double a) const;
};

void validate_profile(const AgeProfile& u0);

// trapezoid mass  int_0^extent u(a) da
double total_population(const AgeProfile& u0);

// resample onto step `da`, `count + 1` nodes covering [0, count * da]
AgeProfile resample(const AgeProfile& u0, double da, std::size_t count);

// ubar(a) = ln(alpha) * e^{-mu a} scaled by `scale`; requires alpha > 1
AgeProfile equilibrium_profile(double alpha, double mu, double da, double a_max, double scale = 1.0);

// smooth bump  height * exp(-1 / (1 - x^2)) * e  on |x| < 1, x = (a-center)/width
AgeProfile bump_profile(double da, double a_max, double center, double width, double height);

// box of the given height supported on [horizon + offset, horizon + offset + length],
// where horizon is the kernel's reproductive horizon; requires a finite horizon
AgeProfile boundary_tail_profile(const BirthKernel& kernel, double da, double offset,
                                 double length, double height);

}  // namespace gmlab
