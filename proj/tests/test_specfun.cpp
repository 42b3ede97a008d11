#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cipc/specfun.hpp"
#include "oracles.hpp"

using cipc::specfun::ei;
using cipc::specfun::e1_scaled;
using cipc::specfun::hyper3f3_unit_params;
using cipc::specfun::integrate_semi_infinite;
using cipc::specfun::QuadratureSpec;
using cipc::specfun::ToleranceError;

namespace {
double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("ei matches the power-series oracle at the spec examples") {
  CHECK(rel_err(ei(-1.0), static_cast<double>(oracle::ei_series(-1.0L))) < 1e-13);
  CHECK(rel_err(ei(-2.0), static_cast<double>(oracle::ei_series(-2.0L))) < 1e-13);
  CHECK(ei(-1.0) == doctest::Approx(-0.219384).epsilon(1e-5));
  CHECK(ei(-2.0) == doctest::Approx(-0.048901).epsilon(1e-4));
}

TEST_CASE("ei frozen reference values, both axes") {
  CHECK(rel_err(ei(-1.0), oracle::frozen::ei_m1) < 1e-13);
  CHECK(rel_err(ei(-2.0), oracle::frozen::ei_m2) < 1e-13);
  CHECK(rel_err(ei(-1.5), oracle::frozen::ei_m1_5) < 1e-13);
  CHECK(rel_err(ei(-3.0), oracle::frozen::ei_m3) < 1e-13);
  CHECK(rel_err(ei(1.0), oracle::frozen::ei_p1) < 1e-13);
  CHECK(rel_err(ei(0.5), oracle::frozen::ei_p0_5) < 1e-13);
  CHECK(rel_err(ei(-0.01), oracle::frozen::ei_m0_01) < 1e-13);
  CHECK(rel_err(ei(-40.0), oracle::frozen::ei_m40) < 1e-12);
  CHECK(rel_err(ei(40.0), oracle::frozen::ei_p40) < 1e-12);
  CHECK(rel_err(ei(700.0), oracle::frozen::ei_p700) < 1e-12);
  CHECK(rel_err(ei(-700.0), oracle::frozen::ei_m700) < 1e-12);
  CHECK(rel_err(ei(-1e-6), oracle::frozen::ei_m1e6) < 1e-13);
  CHECK(rel_err(ei(1e-6), oracle::frozen::ei_p1e6) < 1e-13);
}

TEST_CASE("ei sign and domain behaviour") {
  for (const double x : {-10.0, -1.0, -0.01}) CHECK(ei(x) < 0.0);
  CHECK_THROWS_AS(ei(0.0), std::domain_error);
  CHECK_THROWS_AS(ei(730.0), std::overflow_error);
}

TEST_CASE("ei branch agreement at the switchover points") {
  // Positive axis switches between series and asymptotic at x = 40.
  const double eps = 40.0 * 1e-13;
  CHECK(rel_err(ei(40.0 - eps), ei(40.0 + eps)) < 1e-10);
  // Negative axis switches between series and continued fraction at |x| = 1.
  CHECK(rel_err(ei(-1.0 + 1e-13), ei(-1.0 - 1e-13)) < 1e-10);
}

TEST_CASE("d/dx Ei(x) = e^x/x by central differences") {
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) {
    const double mag = 0.01 * std::pow(10.0 / 0.01, i / 19.0);
    xs.push_back(mag);
    xs.push_back(-mag);
  }
  for (const double x : xs) {
    const double h = std::abs(x) * 1e-6;
    const double fd = (ei(x + h) - ei(x - h)) / (2.0 * h);
    const double exact = std::exp(x) / x;
    CHECK(rel_err(fd, exact) < 1e-6);
  }
}

TEST_CASE("e1_scaled consistency with ei on the negative axis") {
  for (const double t : {0.3, 1.0, 2.5, 30.0, 300.0}) {
    CHECK(rel_err(-std::exp(-t) * e1_scaled(t), ei(-t)) < 1e-13);
  }
  CHECK_THROWS_AS(e1_scaled(0.0), std::domain_error);
}

TEST_CASE("hyper3f3 unit-parameter series") {
  CHECK(std::abs(hyper3f3_unit_params(1e-12) - 1.0) < 1e-11);
  CHECK(rel_err(hyper3f3_unit_params(1.0),
                static_cast<double>(oracle::hyper3f3_series(1.0L))) < 1e-14);
  CHECK(rel_err(hyper3f3_unit_params(1.0), oracle::frozen::hyper3f3_at_1) < 1e-13);
  CHECK(rel_err(hyper3f3_unit_params(5.0), oracle::frozen::hyper3f3_at_5) < 1e-13);
  CHECK(rel_err(hyper3f3_unit_params(0.1), oracle::frozen::hyper3f3_at_0_1) < 1e-13);
  CHECK_THROWS_AS(hyper3f3_unit_params(-1.0), std::domain_error);
  CHECK_THROWS_AS(hyper3f3_unit_params(800.0), std::overflow_error);
  CHECK_THROWS_AS(hyper3f3_unit_params(5.0, 3), ToleranceError);
}

TEST_CASE("hyper3f3 is increasing in z with all-positive terms") {
  double prev = 1.0;  // series value in the z -> 0 limit
  for (const double z : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double v = hyper3f3_unit_params(z);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("hyper3f3 partial sums grow monotonically") {
  // Truncated evaluations surface their partial sum through the error
  // object; successive caps must increase toward the full value.
  const double full = hyper3f3_unit_params(5.0);
  double prev = 0.0;
  for (int cap = 2; cap <= 6; ++cap) {
    double partial = 0.0;
    try {
      hyper3f3_unit_params(5.0, cap);
      FAIL("expected non-convergence");
    } catch (const ToleranceError& e) {
      partial = e.best_estimate;
    }
    CHECK(partial > prev);
    CHECK(partial < full);
    prev = partial;
  }
}

TEST_CASE("quadrature reproduces moments of the exponential") {
  const QuadratureSpec spec;
  CHECK(std::abs(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0,
                                         spec) -
                 1.0) < spec.abs_tol * 10);
  double factorial = 1.0;
  for (int n = 0; n <= 5; ++n) {
    if (n > 0) factorial *= n;
    const double got = integrate_semi_infinite(
        [n](double x) { return std::pow(x, n) * std::exp(-x); }, 0.0, spec);
    CHECK(std::abs(got - factorial) < spec.abs_tol + spec.rel_tol * factorial * 10);
  }
}

TEST_CASE("quadrature identity: int e^-x ln(1+x) = -e Ei(-1)") {
  const double got = integrate_semi_infinite(
      [](double x) { return std::exp(-x) * std::log1p(x); }, 0.0, {1e-12, 1e-12, 4000});
  CHECK(rel_err(got, -std::exp(1.0) * ei(-1.0)) < 1e-11);
  CHECK(rel_err(got, oracle::frozen::exp_log1p_integral) < 1e-11);
}

TEST_CASE("quadrature respects a shifted lower limit") {
  // int_2^inf e^-x dx = e^-2
  const double got =
      integrate_semi_infinite([](double x) { return std::exp(-x); }, 2.0, {});
  CHECK(rel_err(got, std::exp(-2.0)) < 1e-9);
}

TEST_CASE("quadrature reports tolerance failure with its best estimate") {
  bool threw = false;
  try {
    integrate_semi_infinite([](double x) { return std::exp(-x) * std::log1p(x); },
                            0.0, {1e-15, 1e-15, 1});
  } catch (const ToleranceError& e) {
    threw = true;
    CHECK(std::abs(e.best_estimate - oracle::frozen::exp_log1p_integral) < 1e-3);
    CHECK(e.error_bound > 1e-15);
  }
  CHECK(threw);
}

TEST_CASE("quadrature spec validation") {
  const QuadratureSpec bad_abs{-1.0, 1e-8, 100};
  const QuadratureSpec bad_rel{1e-10, 0.0, 100};
  const QuadratureSpec bad_subdiv{1e-10, 1e-8, 0};
  CHECK_THROWS_AS(bad_abs.validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad_rel.validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad_subdiv.validate(), std::invalid_argument);
}
