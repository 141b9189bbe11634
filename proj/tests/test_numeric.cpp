#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "swkblab/numeric.hpp"

using namespace swkblab;

TEST_CASE("kahan summation compensates rounding", "[numeric]") {
  KahanSum s;
  for (int i = 0; i < 10; ++i) s.add(0.1);
  REQUIRE(std::abs(s.sum - 1.0) < 1e-15);

  KahanSum t;
  t.add(1.0);
  for (int i = 0; i < 1000000; ++i) t.add(1e-16);
  REQUIRE(std::abs(t.sum - (1.0 + 1e-10)) < 1e-14);
}

TEST_CASE("adaptive quadrature on smooth integrands", "[numeric]") {
  double v = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  REQUIRE(std::abs(v - 2.0) < 1e-12);

  double runge = integrate([](double x) { return 1.0 / (1.0 + 25.0 * x * x); },
                           -1.0, 1.0);
  REQUIRE(std::abs(runge - 0.4 * std::atan(5.0)) < 1e-10);

  double g = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
  REQUIRE(std::abs(g - std::sqrt(M_PI)) < 1e-12);
}

TEST_CASE("adaptive quadrature near an endpoint singularity", "[numeric]") {
  double v = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                       1e-9, 1e-9);
  REQUIRE(std::abs(v - 2.0) < 1e-7);
}

TEST_CASE("brent root finder", "[numeric]") {
  double r = brent_root([](double x) { return std::cos(x); }, 0.0, 2.0);
  REQUIRE(std::abs(r - M_PI / 2.0) < 1e-12);

  double s = brent_root([](double x) { return x * x * x - 2.0 * x - 5.0; },
                        1.0, 3.0);
  REQUIRE(std::abs(s - 2.0945514815423265) < 1e-12);

  REQUIRE_THROWS_AS(brent_root([](double x) { return 1.0 + x * x; }, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("upward bracketing solve", "[numeric]") {
  double r = bracket_and_solve_up([](double e) { return e * e - 9.0; }, 0.5,
                                  0.7, 100.0);
  REQUIRE(std::abs(r - 3.0) < 1e-12);
  REQUIRE_THROWS_AS(
      bracket_and_solve_up([](double) { return 1.0; }, 0.0, 1.0, 50.0),
      NonConvergenceError);
}

TEST_CASE("monotone cubic interpolation preserves monotonicity", "[numeric]") {
  std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 5.0, 8.0};
  std::vector<double> ys = {0.0, 0.1, 3.0, 3.1, 3.2, 10.0};
  MonotoneCubic mc(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i)
    REQUIRE(std::abs(mc(xs[i]) - ys[i]) < 1e-14);
  double prev = mc(0.0);
  for (double x = 0.01; x <= 8.0; x += 0.01) {
    double cur = mc(x);
    REQUIRE(cur >= prev - 1e-12);
    prev = cur;
  }
  // Derivative consistent with a central difference.
  double h = 1e-6;
  double fd = (mc(2.5 + h) - mc(2.5 - h)) / (2.0 * h);
  REQUIRE(std::abs(mc.derivative(2.5) - fd) < 1e-6);
}

TEST_CASE("hermite table reproduces a tabulated function", "[numeric]") {
  const double x0 = 0.0, dx = 0.01;
  const int n = 629;  // covers [0, 6.28]
  std::vector<double> f(n), df(n);
  for (int i = 0; i < n; ++i) {
    double x = x0 + dx * i;
    f[i] = std::sin(x);
    df[i] = std::cos(x);
  }
  HermiteTable tab(x0, dx, f, df);
  REQUIRE(tab.covers(3.0));
  REQUIRE_FALSE(tab.covers(7.0));
  double worst_v = 0.0, worst_d = 0.0;
  for (double x = 0.0; x <= 6.28; x += 0.0037) {
    worst_v = std::max(worst_v, std::abs(tab.value(x) - std::sin(x)));
    worst_d = std::max(worst_d, std::abs(tab.slope(x) - std::cos(x)));
  }
  REQUIRE(worst_v < 1e-9);
  REQUIRE(worst_d < 1e-6);
}
