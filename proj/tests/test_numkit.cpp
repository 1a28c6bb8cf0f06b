#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lhdeform/numkit.hpp"

using namespace lhd;

TEST_CASE("sinhc matches sinh(x)/x away from zero and its series near zero") {
  CHECK(sinhc(0.0) == 1.0);
  for (double x : {1e-3, 0.1, 0.5, 2.0, -3.0, 10.0})
    CHECK(sinhc(x) == doctest::Approx(std::sinh(x) / x).epsilon(1e-15));
  for (double x : {1e-5, -7e-5, 9.99e-5}) {
    const long double lx = x;
    const long double ref = std::sinh(lx) / lx;
    CHECK(std::abs(sinhc(x) - static_cast<double>(ref)) < 1e-16);
  }
  CHECK(sinhc(1e-4 * (1 - 1e-12)) == doctest::Approx(sinhc(1e-4 * (1 + 1e-12))).epsilon(1e-15));
  CHECK_THROWS_AS(sinhc(std::nan("")), DomainError);
}

TEST_CASE("sinhc satisfies x y' + y = cosh x") {
  for (double x : {-2.0, -0.3, 1e-4, 0.7, 3.0})
    CHECK(x * sinhc_prime(x) + sinhc(x) == doctest::Approx(std::cosh(x)).epsilon(1e-13));
  CHECK(sinhc_prime(0.0) == 0.0);
  const double h = 1e-5;
  for (double x : {0.2, 1.5})
    CHECK(sinhc_prime(x) == doctest::Approx((sinhc(x + h) - sinhc(x - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("expm1_ratio") {
  CHECK(expm1_ratio(0, 3.0) == 3.0);
  CHECK(expm1_ratio(0.5, 2.0) == doctest::Approx((1 - std::exp(-1.0)) / 0.5).epsilon(1e-15));
  CHECK(expm1_ratio(1e-12, 2.0) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("central_gradient of a quadratic is exact to rounding") {
  const auto g = central_gradient([](double x, double y) { return 3 * x * x - x * y + 2 * y; }, 1.5, -0.5);
  CHECK(g[0] == doctest::Approx(6 * 1.5 + 0.5).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(-1.5 + 2).epsilon(1e-9));
}

TEST_CASE("adaptive integrator: harmonic oscillator over one period") {
  const OdeField f = [](double, const State& s) { return State{s[1], -s[0]}; };
  const double T = 2 * std::numbers::pi;
  const auto tr = integrate_adaptive(f, 0, T, {1.0, 0.0});
  CHECK(tr.back()[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(tr.back()[1]) < 1e-9);
  CHECK(tr.t.back() == T);
  CHECK(tr.accepted_steps + 1 == tr.size());
}

TEST_CASE("adaptive integrator: error shrinks with tolerance") {
  const OdeField f = [](double t, const State& s) { return State{-2 * t * s[0]}; };
  double prev = 1;
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    IntegratorConfig cfg;
    cfg.abs_tol = cfg.rel_tol = tol;
    const double err = std::abs(integrate_adaptive(f, 0, 2, {1.0}, cfg).back()[0] - std::exp(-4.0));
    CHECK(err < 100 * tol);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("fixed RK4 is fourth order") {
  const OdeField f = [](double, const State& s) { return State{s[0]}; };
  const double e1 = std::abs(integrate_fixed_rk4(f, 0, 1, {1.0}, 0.1).back()[0] - std::exp(1.0));
  const double e2 = std::abs(integrate_fixed_rk4(f, 0, 1, {1.0}, 0.05).back()[0] - std::exp(1.0));
  CHECK(std::log2(e1 / e2) == doctest::Approx(4).epsilon(0.05));
}

TEST_CASE("integrators report blow-up and domain exits") {
  const OdeField blow = [](double, const State& s) { return State{s[0] * s[0]}; };
  CHECK_THROWS_AS(integrate_adaptive(blow, 0, 2, {1.0}), IntegrationError);
  const OdeField lin = [](double, const State&) { return State{-1.0}; };
  const StatePredicate positive = [](const State& s) { return s[0] > 0; };
  try {
    integrate_adaptive(lin, 0, 2, {0.5}, {}, positive);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.t_last() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(e.last_state()[0] > 0);
  }
  CHECK_THROWS_AS(integrate_adaptive(lin, 0, 1, {-1.0}, {}, positive), DomainError);
  CHECK_THROWS_AS(integrate_fixed_rk4(lin, 0, 2, {0.5}, 0.1, positive), IntegrationError);
}

TEST_CASE("fields throwing on their singular set stop the integration cleanly") {
  const OdeField f = [](double, const State& s) {
    if (s[0] <= 0) throw SingularError("x <= 0");
    return State{-1.0};
  };
  CHECK_THROWS_AS(integrate_adaptive(f, 0, 2, {0.5}), IntegrationError);
}

TEST_CASE("integrator config validation") {
  IntegratorConfig cfg;
  cfg.abs_tol = 0;
  CHECK_THROWS_AS(integrate_adaptive([](double, const State& s) { return s; }, 0, 1, {1.0}, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_adaptive([](double, const State& s) { return s; }, 1, 0, {1.0}), std::invalid_argument);
}

TEST_CASE("integrate_at returns states at the requested times") {
  const OdeField f = [](double, const State& s) { return State{-s[0]}; };
  const auto ts = linspace(0, 3, 6);
  REQUIRE(ts.size() == 7);
  const auto ys = integrate_at(f, ts, {2.0});
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ys[i][0] == doctest::Approx(2 * std::exp(-ts[i])).epsilon(1e-9));
}

TEST_CASE("Chebyshev-weight quadrature") {
  CHECK(quad_chebyshev_weight([](double) { return 1.0; }, 16) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(quad_chebyshev_weight([](double x) { return x * x; }, 16) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK_THROWS(quad_chebyshev_weight([](double) { return 1.0; }, 0));
}
