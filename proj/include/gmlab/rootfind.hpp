#pragma once

#include <cmath>
#include <string>

#include "gmlab/errors.hpp"

namespace gmlab {

struct RootResult {
  double x;
  double residual;
  int iterations;
};

// Newton iteration safeguarded by a maintained bracket [lo, hi] with
// f(lo) and f(hi) of opposite sign.  Any Newton step that leaves the
// bracket, or lands on an unusable derivative, is replaced by bisection,
// so convergence is guaranteed for continuous f.  Stops when
// |f(x)| <= tol_residual or the bracket width drops below tol_x.
template <class F, class DF>
RootResult newton_bisect(F f, DF df, double lo, double hi, double f_lo, double f_hi,
                         double tol_residual, double tol_x = 0.0, int max_iter = 200,
                         const char* label = "newton_bisect") {
  if (!(lo < hi)) throw invalid_parameter(std::string(label) + ": empty bracket");
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw invalid_parameter(std::string(label) + ": no sign change over bracket");

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(fx) <= tol_residual) return {x, fx, it};
    if ((fx > 0.0) == (f_hi > 0.0)) {
      hi = x;
      f_hi = fx;
    } else {
      lo = x;
      f_lo = fx;
    }
    if (hi - lo <= tol_x) return {x, fx, it};

    double d = df(x);
    double step = fx / d;
    double xn = x - step;
    if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    x = xn;
    fx = f(x);
  }
  if (std::abs(fx) <= tol_residual) return {x, fx, max_iter};
  throw numerical_error(std::string(label) + ": no convergence after " +
                        std::to_string(max_iter) + " iterations, residual " +
                        std::to_string(fx));
}

}  // namespace gmlab
