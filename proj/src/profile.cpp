#include "gmlab/profile.hpp"

#include <cmath>

#include "gmlab/errors.hpp"

namespace gmlab {

double AgeProfile::at(double a) const {
  if (values.empty() || a < 0.0 || a > extent()) return 0.0;
  double x = a / da;
  auto i = static_cast<std::size_t>(x);
  if (i + 1 >= values.size()) return values.back();
  double f = x - static_cast<double>(i);
  return values[i] * (1.0 - f) + values[i + 1] * f;
}

void validate_profile(const AgeProfile& u0) {
  if (!(u0.da > 0.0) || !std::isfinite(u0.da))
    throw invalid_parameter("profile: da must be positive");
  if (u0.values.size() < 2) throw invalid_parameter("profile: need at least two grid values");
  for (double v : u0.values)
    if (!std::isfinite(v) || v < 0.0)
      throw invalid_parameter("profile: values must be finite and nonnegative");
}

double total_population(const AgeProfile& u0) {
  validate_profile(u0);
  double s = 0.0;
  for (std::size_t i = 0; i < u0.values.size(); ++i) {
    double w = (i == 0 || i + 1 == u0.values.size()) ? 0.5 : 1.0;
    s += w * u0.da * u0.values[i];
  }
  return s;
}

AgeProfile resample(const AgeProfile& u0, double da, std::size_t count) {
  validate_profile(u0);
  if (!(da > 0.0)) throw invalid_parameter("resample: da must be positive");
  AgeProfile out;
  out.da = da;
  out.values.resize(count + 1);
  for (std::size_t j = 0; j <= count; ++j) out.values[j] = u0.at(da * static_cast<double>(j));
  return out;
}

AgeProfile equilibrium_profile(double alpha, double mu, double da, double a_max, double scale) {
  if (!(alpha > 1.0)) throw domain_error("equilibrium_profile: no positive equilibrium for alpha <= 1");
  if (!(mu > 0.0)) throw invalid_parameter("equilibrium_profile: mu must be positive");
  if (!(da > 0.0) || !(a_max >= da)) throw invalid_parameter("equilibrium_profile: bad grid");
  if (!(scale >= 0.0)) throw invalid_parameter("equilibrium_profile: scale must be nonnegative");
  auto count = static_cast<std::size_t>(std::llround(a_max / da));
  AgeProfile out;
  out.da = da;
  out.values.resize(count + 1);
  double u0 = scale * std::log(alpha);
  for (std::size_t j = 0; j <= count; ++j)
    out.values[j] = u0 * std::exp(-mu * da * static_cast<double>(j));
  return out;
}

AgeProfile bump_profile(double da, double a_max, double center, double width, double height) {
  if (!(da > 0.0) || !(a_max >= da)) throw invalid_parameter("bump_profile: bad grid");
  if (!(width > 0.0) || !(height >= 0.0) || !(center >= 0.0))
    throw invalid_parameter("bump_profile: bad bump shape");
  auto count = static_cast<std::size_t>(std::llround(a_max / da));
  AgeProfile out;
  out.da = da;
  out.values.assign(count + 1, 0.0);
  for (std::size_t j = 0; j <= count; ++j) {
    double x = (da * static_cast<double>(j) - center) / width;
    if (std::abs(x) < 1.0)
      out.values[j] = height * std::exp(1.0 - 1.0 / (1.0 - x * x));
  }
  return out;
}

AgeProfile boundary_tail_profile(const BirthKernel& kernel, double da, double offset,
                                 double length, double height) {
  double horizon = kernel.reproductive_horizon();
  if (!std::isfinite(horizon))
    throw validation_error("u0", "boundary tail needs a kernel with finite reproductive horizon");
  if (!(da > 0.0) || !(offset > 0.0) || !(length > 0.0) || !(height > 0.0))
    throw invalid_parameter("boundary_tail_profile: bad box");
  double lo = horizon + offset, hi = horizon + offset + length;
  auto count = static_cast<std::size_t>(std::ceil(hi / da - 1e-9)) + 1;
  AgeProfile out;
  out.da = da;
  out.values.assign(count + 1, 0.0);
  for (std::size_t j = 0; j <= count; ++j) {
    double a = da * static_cast<double>(j);
    if (a >= lo && a <= hi) out.values[j] = height;
  }
  return out;
}

}  // namespace gmlab
