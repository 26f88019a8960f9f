#include <cmath>
#include <complex>

#include <doctest.h>

#include "gmlab/errors.hpp"
#include "gmlab/spectral.hpp"

using namespace gmlab;

namespace {

BirthKernel flagship() { return BirthKernel::shifted_gamma(1.0, 0.0, 0, 1.0); }
BirthKernel smooth() { return BirthKernel::shifted_gamma(1.0, 1.0, 2, 1.0); }

}  // namespace

TEST_CASE("characteristic function at distinguished points") {
  std::complex<double> d0 = char_residual(0.0, std::exp(2.0), flagship());
  CHECK(std::abs(d0 - 2.0) < 1e-14);
  std::complex<double> d1 = char_residual(0.0, std::exp(1.0), smooth());
  CHECK(std::abs(d1 - 1.0) < 1e-14);
  CHECK_THROWS_AS(char_residual(0.0, -1.0, flagship()), invalid_parameter);
}

TEST_CASE("dominant eigenvalue solves m K = 1") {
  CharRoot r = dominant_eigenvalue(std::exp(2.0), flagship());
  CHECK(std::abs(r.lambda - 1.2079400315693230) < 1e-12);
  CHECK(std::abs(r.multiplier * flagship().laplace_real(r.lambda) - 1.0) <= 1e-12);

  for (const BirthKernel& k : {flagship(), smooth()}) {
    CharRoot unit = dominant_eigenvalue(1.0, k);
    CHECK(std::abs(unit.lambda) < 1e-12);
  }

  CharRoot neg = dominant_eigenvalue(0.5, smooth());
  CHECK(neg.lambda < 0.0);
  CharRoot pos = dominant_eigenvalue(2.0, smooth());
  CHECK(pos.lambda > 0.0);
  CHECK(pos.lambda < dominant_eigenvalue(4.0, smooth()).lambda);

  CHECK_THROWS_AS(dominant_eigenvalue(0.0, smooth()), invalid_parameter);
}

TEST_CASE("dominant eigenvalue on a tabulated kernel has a closed form") {
  // single interior node at age 1/2 makes K(lambda) = e^{-lambda/2} exactly
  BirthKernel t = BirthKernel::tabulated(0.5, {0.0, 1.0, 0.0}, 1.0);
  CharRoot r = dominant_eigenvalue(0.1, t);
  CHECK(r.lambda == doctest::Approx(2.0 * std::log(0.1)).epsilon(1e-12));
  CharRoot g = dominant_eigenvalue(std::exp(3.0), t);
  CHECK(g.lambda == doctest::Approx(6.0).epsilon(1e-12));
  // root left of the searchable window
  CHECK_THROWS_AS(dominant_eigenvalue(1e-3, t), domain_error);
}

TEST_CASE("adjoint weight normalizes to one at age zero on the eigenvalue") {
  for (double m : {0.5, 1.0, std::exp(2.0)}) {
    CharRoot r = dominant_eigenvalue(m, smooth());
    double g0 = adjoint_eigenfunction(smooth(), m, r.lambda, 0.0);
    CHECK(g0 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("adjoint weight is continuous at tau and vanishes past a tabulated horizon") {
  CharRoot r = dominant_eigenvalue(2.0, smooth());
  double left = adjoint_eigenfunction(smooth(), 2.0, r.lambda, 1.0 - 1e-9);
  double right = adjoint_eigenfunction(smooth(), 2.0, r.lambda, 1.0 + 1e-9);
  CHECK(left == doctest::Approx(right).epsilon(1e-7));

  BirthKernel t = BirthKernel::tabulated(0.5, {0.0, 1.0, 0.0}, 1.0);
  CharRoot rt = dominant_eigenvalue(0.5, t);
  CHECK(adjoint_eigenfunction(t, 0.5, rt.lambda, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(adjoint_eigenfunction(t, 0.5, rt.lambda, 1.0) == 0.0);
  CHECK(adjoint_eigenfunction(t, 0.5, rt.lambda, 5.0) == 0.0);

  CHECK_THROWS_AS(adjoint_eigenfunction(smooth(), 2.0, -2.5, 1.0), domain_error);
  CHECK_THROWS_AS(adjoint_eigenfunction(smooth(), 2.0, 0.5, -1.0), invalid_parameter);
}

TEST_CASE("hopf frequencies and alphas for the flagship family") {
  // frozen from a high-precision offline solve of the phase equation
  const double omega[6] = {2.0287578381104342, 7.9786657124132408, 14.207436725191188,
                           20.469167402740950, 26.740916014787309, 33.017001033357244};
  const double alpha[6] = {26.097155771399833, 8442.9634203677098, 4166496.5380352963,
                           2160444507.2708611, 1137219564529.0721, 602519578005743.02};
  for (int k = 0; k <= 5; ++k) {
    double w = hopf_frequency(k, 1.0, 0.0, 0, 1.0);
    CHECK(std::abs(w - omega[k]) < 1e-9);
    double a = hopf_alpha(w, 0.0, 0, 1.0);
    CHECK(a == doctest::Approx(alpha[k]).epsilon(1e-10));
  }
}

TEST_CASE("hopf locus is ordered, transversal, and on the characteristic variety") {
  std::vector<HopfPoint> pts = hopf_locus(5, 1.0, 0.0, 0, 1.0);
  REQUIRE(pts.size() == 6);
  CHECK(std::abs(pts[0].transversality_re - 0.0127664610893) < 1e-9);
  CHECK(pts[1].transversality_re == doctest::Approx(1.42941703321e-5).epsilon(1e-6));
  BirthKernel k = flagship();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].k == static_cast<int>(i));
    CHECK(pts[i].transversality_re > 0.0);
    if (i > 0) CHECK(pts[i].alpha > pts[i - 1].alpha);
    std::complex<double> d =
        char_residual(std::complex<double>(0.0, pts[i].omega), pts[i].alpha, k);
    CHECK(std::abs(d) < 1e-8);
  }
}

TEST_CASE("transversality agrees with finite differences of the characteristic function") {
  HopfPoint p = hopf_locus(0, 1.0, 0.0, 0, 1.0)[0];
  BirthKernel k = flagship();
  double h = 1e-5;
  std::complex<double> iw(0.0, p.omega);
  std::complex<double> d_lambda =
      (char_residual(iw + h, p.alpha, k) - char_residual(iw - h, p.alpha, k)) / (2.0 * h);
  std::complex<double> d_alpha =
      (char_residual(iw, p.alpha + h, k) - char_residual(iw, p.alpha - h, k)) / (2.0 * h);
  std::complex<double> slope = -d_alpha / d_lambda;
  CHECK(slope.real() == doctest::Approx(p.transversality_re).epsilon(1e-6));
}

TEST_CASE("hopf locus in n approaches the stability endpoint") {
  // frozen offline solves for tau = kappa = mu = 1
  double w0 = hopf_frequency(0, 1.0, 1.0, 0, 1.0);
  CHECK(std::abs(w0 - 2.2889297281034044) < 1e-9);
  CHECK(hopf_alpha(w0, 1.0, 0, 1.0) == doctest::Approx(12.426143018673795).epsilon(1e-10));
  double w2 = hopf_frequency(0, 1.0, 1.0, 2, 1.0);
  CHECK(std::abs(w2 - 1.3550972345478187) < 1e-9);
  CHECK(hopf_alpha(w2, 1.0, 2, 1.0) == doctest::Approx(15.838493155028241).epsilon(1e-10));
  double w50 = hopf_frequency(0, 1.0, 1.0, 50, 1.0);
  CHECK(std::abs(w50 - 0.11868444215725615) < 1e-9);
  CHECK(hopf_alpha(w50, 1.0, 50, 1.0) == doctest::Approx(8.1155419727795053).epsilon(1e-10));
}

TEST_CASE("hopf helpers validate their arguments") {
  CHECK_THROWS_AS(hopf_frequency(-1, 1.0, 0.0, 0, 1.0), invalid_parameter);
  CHECK_THROWS_AS(hopf_frequency(0, 0.0, 1.0, 0, 1.0), invalid_parameter);
  CHECK_THROWS_AS(hopf_frequency(0, 1.0, 0.0, 2, 1.0), invalid_parameter);
  CHECK_THROWS_AS(hopf_alpha(-0.5, 1.0, 0, 1.0), invalid_parameter);
  CHECK_THROWS_AS(hopf_locus(-1, 1.0, 0.0, 0, 1.0), invalid_parameter);
  CHECK_THROWS_AS(transversality(2.0, std::exp(1.0), 1.0, 0.0, 0, 1.0), domain_error);
  // omega = 0 collapses the locus formula to the endpoint alpha = e^2
  CHECK(hopf_alpha(0.0, 3.0, 4, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
}
