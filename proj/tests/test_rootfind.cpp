#include <cmath>

#include <doctest.h>

#include "gmlab/rootfind.hpp"

using namespace gmlab;

TEST_CASE("newton_bisect finds a simple root to tolerance") {
  auto f = [](double x) { return x * x - 2.0; };
  auto df = [](double x) { return 2.0 * x; };
  RootResult r = newton_bisect(f, df, 0.0, 2.0, f(0.0), f(2.0), 1e-14);
  CHECK(std::abs(r.x - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(r.residual) <= 1e-14);
}

TEST_CASE("newton_bisect returns exact endpoint roots") {
  auto f = [](double x) { return x - 1.0; };
  auto df = [](double) { return 1.0; };
  RootResult r = newton_bisect(f, df, 1.0, 3.0, 0.0, 2.0, 1e-14);
  CHECK(r.x == 1.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("newton_bisect survives a vanishing derivative at the root") {
  auto f = [](double x) { return x * x * x; };
  auto df = [](double x) { return 3.0 * x * x; };
  RootResult r = newton_bisect(f, df, -1.0, 2.0, -1.0, 8.0, 1e-13);
  CHECK(std::abs(f(r.x)) <= 1e-13);
}

TEST_CASE("newton_bisect rejects a bracket without sign change") {
  auto f = [](double x) { return x * x + 1.0; };
  auto df = [](double x) { return 2.0 * x; };
  CHECK_THROWS_AS(newton_bisect(f, df, 0.0, 1.0, f(0.0), f(1.0), 1e-12), invalid_parameter);
  CHECK_THROWS_AS(newton_bisect(f, df, 1.0, 1.0, 2.0, 2.0, 1e-12), invalid_parameter);
}
