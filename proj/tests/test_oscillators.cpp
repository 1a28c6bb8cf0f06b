#include <cmath>

#include "doctest.h"
#include "lhdeform/oscillators.hpp"
#include "support.hpp"

using namespace lhd;

namespace {

DampedCoeffs damped(double a, double b, double c) {
  return {TimeCoefficient::constant(a), TimeCoefficient::constant(b), TimeCoefficient::constant(c),
          TimeCoefficient::constant(0), TimeCoefficient::constant(0)};
}

void check_table(const PlanarLHFamily& fam, PhasePoint p, double tol) {
  auto h = [&](int k) { return [&fam, k](PhasePoint q) { return fam.hams[k](q); }; };
  for (const auto& r : fam.bracket_table) {
    INFO(r.label);
    CHECK(std::abs(lhdtest::fd_bracket(h(r.i), h(r.j), 1, p) - r.rhs(p)) < tol);
    CHECK(std::abs(poisson_bracket(fam.hams[r.i], fam.hams[r.j], fam.lambda, p) - r.rhs(p)) < 1e-12);
  }
}

}  // namespace

TEST_CASE("h6 realization") {
  const auto fam = h6_family();
  REQUIRE(fam.hams.size() == 6);
  for (const PhasePoint p : lhdtest::grid(-2, 2, -2, 2, 4)) {
    check_table(fam, p, 1e-8);
    for (int k = 1; k < 6; ++k) {
      const double b = lhdtest::fd_bracket(h6_casimir, [&](PhasePoint q) { return fam.hams[k](q); }, 1, p);
      CHECK(std::abs(b) < 1e-7);
    }
  }
  const Vec2 b34 = lie_bracket(fam.fields[3], fam.fields[4], {1, 2}), X4 = fam.fields[4]({1, 2});
  CHECK(b34[0] == doctest::Approx(-2 * X4[0]).epsilon(1e-5));
  CHECK(b34[1] == doctest::Approx(-2 * X4[1]).epsilon(1e-5));
  CHECK(h6_F3({0.3, 1}, {0.3, 1}, {2, -1}) == 0.0);
  CHECK(h6_F3({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("damped oscillator field and constant") {
  const TimeField2 f = damped_field({TimeCoefficient::constant(1), TimeCoefficient::constant(2),
                                     TimeCoefficient::constant(3), TimeCoefficient::constant(4),
                                     TimeCoefficient::constant(5)});
  const auto fam = h6_family();
  const PhasePoint p{0.7, -1.1};
  const Vec2 v = f(0, p);
  for (int i = 0; i < 2; ++i)
    CHECK(v[i] == doctest::Approx(5 * fam.fields[1](p)[i] - 4 * fam.fields[2](p)[i] + fam.fields[3](p)[i] +
                                  2 * fam.fields[4](p)[i] - 3 * fam.fields[5](p)[i]));
  CHECK(damped_F3({0, 1}, {1, 0}, {2, -1}) == 0.0);
  CHECK(damped_F3({0.2, 1}, {1, 0.5}, {1, 0.5}) == 0.0);
  CHECK(damped_F3_14({1, 0}, {2, -1}, {0, 3}) == doctest::Approx(damped_F3({0, 3}, {1, 0}, {2, -1})));
  CHECK(damped_F3_24({0, 1}, {2, -1}, {0, 3}) == doctest::Approx(damped_F3({0, 1}, {0, 3}, {2, -1})));
}

TEST_CASE("damped constants are conserved and independent") {
  const State s0{0.5, 0.1, -0.3, 0.8, 1.1, -0.4, 0.2, -1.0};
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  const auto ys = integrate_at(plane_ode_copies(damped_field(damped(0.1, 1, 1)), 4), linspace(0, 5, 25), s0, cfg);
  auto P = [](const State& s, int k) { return point_of(s, k); };
  const double F = damped_F3(P(s0, 0), P(s0, 1), P(s0, 2)), F14 = damped_F3_14(P(s0, 1), P(s0, 2), P(s0, 3)),
               F24 = damped_F3_24(P(s0, 0), P(s0, 2), P(s0, 3));
  for (const auto& s : ys) {
    CHECK(lhdtest::rel_err(damped_F3(P(s, 0), P(s, 1), P(s, 2)), F) < 1e-9);
    CHECK(lhdtest::rel_err(damped_F3_14(P(s, 1), P(s, 2), P(s, 3)), F14) < 1e-9);
    CHECK(lhdtest::rel_err(damped_F3_24(P(s, 0), P(s, 2), P(s, 3)), F24) < 1e-9);
  }

  // Jacobian of (F3, F3_24) in the 8 coordinates
  double J[2][8];
  const double h = 1e-6;
  for (int k = 0; k < 8; ++k) {
    State a = s0, b = s0;
    a[k] += h;
    b[k] -= h;
    J[0][k] = (damped_F3(P(a, 0), P(a, 1), P(a, 2)) - damped_F3(P(b, 0), P(b, 1), P(b, 2))) / (2 * h);
    J[1][k] = (damped_F3_24(P(a, 0), P(a, 2), P(a, 3)) - damped_F3_24(P(b, 0), P(b, 2), P(b, 3))) / (2 * h);
  }
  // Gram determinant of the two gradient rows
  double g00 = 0, g11 = 0, g01 = 0;
  for (int k = 0; k < 8; ++k) {
    g00 += J[0][k] * J[0][k];
    g11 += J[1][k] * J[1][k];
    g01 += J[0][k] * J[1][k];
  }
  CHECK(g00 * g11 - g01 * g01 > 1e-6 * g00 * g11);
}

TEST_CASE("damped superposition rule") {
  const State s0{0.5, 0.1, -0.3, 0.8, 1.1, -0.4, 0.2, -1.0};
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  DampedCoeffs co = damped(0.1, 1, 1);
  co.f = TimeCoefficient::sinusoid(0, 0.3, 2);
  const auto ys = integrate_at(plane_ode_copies(damped_field(co), 4), linspace(0, 5, 50), s0, cfg);
  auto P = [](const State& s, int k) { return point_of(s, k); };
  const double r1 = damped_area(P(s0, 0), P(s0, 1), P(s0, 2)), r2 = damped_area(P(s0, 0), P(s0, 2), P(s0, 3));
  for (const auto& s : ys) {
    const PhasePoint x = damped_superpose_signed(P(s, 1), P(s, 2), P(s, 3), r1, r2);
    CHECK(std::abs(x.x - s[0]) < 1e-5);
    CHECK(std::abs(x.y - s[1]) < 1e-5);
  }
  const PhasePoint y = damped_superpose(P(s0, 1), P(s0, 2), P(s0, 3), r1 * r1, r2 * r2, r1 < 0 ? -1 : 1, r2 < 0 ? -1 : 1);
  CHECK(y.x == doctest::Approx(s0[0]).epsilon(1e-12));
  CHECK(y.y == doctest::Approx(s0[1]).epsilon(1e-12));

  const PhasePoint c = damped_superpose({0, 1}, {1, 2}, {3, -1}, 0, 0);
  CHECK(c.x == 1.0);
  CHECK(c.y == 2.0);
  CHECK_THROWS_AS(damped_superpose({1, 1}, {1, 2}, {3, -1}, 1, 1), DomainError);
  CHECK_THROWS_AS(damped_superpose({0, 1}, {1, 2}, {3, -1}, -1, 1), DomainError);
  CHECK_THROWS_AS(damped_superpose({0, 1}, {1, 2}, {3, -1}, 1, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("h4 deformation") {
  const double z = 0.3;
  const auto fam = h4_deformed_family(z);
  check_table(fam, {1, 2}, 1e-8);
  for (const PhasePoint p : lhdtest::grid(-2, 2, -2, 2, 4)) {
    check_table(fam, p, 1e-7);
    for (int k = 0; k < 4; ++k) {
      const auto g = lhdtest::fd_grad([&](PhasePoint q) { return fam.hams[k](q); }, p);
      CHECK(std::abs(fam.fields[k](p)[0] - g[1]) < 1e-7);
      CHECK(std::abs(fam.fields[k](p)[1] + g[0]) < 1e-7);
    }
    const Vec2 v = h4_deformed_field(z, {TimeCoefficient::constant(1), TimeCoefficient::constant(0.5),
                                         TimeCoefficient::constant(-2)})(0, p);
    for (int i = 0; i < 2; ++i)
      CHECK(v[i] == doctest::Approx(fam.fields[1](p)[i] + 0.5 * fam.fields[2](p)[i] - 2 * fam.fields[3](p)[i]));
  }
  const PhasePoint q{1.3, -0.7};
  CHECK(h4_deformed_family(1e-9).hams[3](q) == doctest::Approx(q.x * q.y).epsilon(1e-8));
  CHECK(h4_deformed_family(0).hams[3](q) == doctest::Approx(q.x * q.y).epsilon(1e-15));
}

TEST_CASE("h4 constants have the stated classical limits") {
  const PhasePoint a{0.7, 1.2}, b{-0.4, 0.5};
  CHECK(h4_invariants(0, a, b).F_z == 0.0);
  CHECK(h4_invariants(0, a, b).F_z2 == doctest::Approx((a.x - b.x) * (a.y - b.y)));
  const double f1 = std::abs(h4_invariants(1e-3, a, b).F_z), f2 = std::abs(h4_invariants(5e-4, a, b).F_z);
  CHECK(std::log2(f1 / f2) == doctest::Approx(1).epsilon(0.05));
  // closed form oracle: (e^{-zx}/z)(zx + e^{-zx} - 1) y
  const double z = 0.2;
  CHECK(h4_invariants(z, a, b).F_z ==
        doctest::Approx(std::exp(-z * a.x) / z * (z * a.x + std::exp(-z * a.x) - 1) * a.y).epsilon(1e-13));
}

TEST_CASE("h6 deformation") {
  const double z = 0.25;
  const auto fam = h6_deformed_family(z);
  REQUIRE(fam.hams.size() == 6);
  check_table(fam, {1, 1}, 1e-8);
  for (const PhasePoint p : lhdtest::grid(-1.5, 1.5, -1.5, 1.5, 4)) {
    check_table(fam, p, 1e-7);
    for (int k = 0; k < 6; ++k) {
      const auto g = lhdtest::fd_grad([&](PhasePoint q) { return fam.hams[k](q); }, p);
      CHECK(std::abs(fam.fields[k](p)[0] - g[1]) < 1e-7);
      CHECK(std::abs(fam.fields[k](p)[1] + g[0]) < 1e-7);
    }
    const Vec2 v4 = h6_deformed_field(z, {TimeCoefficient::constant(0), TimeCoefficient::constant(0),
                                          TimeCoefficient::constant(0), TimeCoefficient::constant(1),
                                          TimeCoefficient::constant(0)})(0, p);
    CHECK(v4[0] == doctest::Approx(fam.fields[4](p)[0]));
    CHECK(v4[1] == doctest::Approx(fam.fields[4](p)[1]));
  }
  const auto cl = h6_family(), near = h6_deformed_family(1e-7);
  const PhasePoint q{0.6, -1.2};
  for (int k = 0; k < 6; ++k) CHECK(near.hams[k](q) == doctest::Approx(cl.hams[k](q)).epsilon(1e-6));
  const Vec2 c = lie_bracket(near.fields[3], near.fields[4], q), d = lie_bracket(cl.fields[3], cl.fields[4], q);
  CHECK(c[0] == doctest::Approx(d[0]).epsilon(1e-5));
  CHECK(c[1] == doctest::Approx(d[1]).epsilon(1e-5));
  CHECK(h6_casimir_deformed(0, q) == h6_casimir(q));
}

TEST_CASE("displayed two-copy h6 constant has a finite classical limit") {
  const PhasePoint a{0.4, 0.9}, b{-0.3, 1.4};
  CHECK(h6_F3_deformed(0, a, b) == 0.0);
  const double g1 = h6_F3_deformed(1e-3, a, b), g2 = h6_F3_deformed(1e-4, a, b), g3 = h6_F3_deformed(1e-5, a, b);
  CHECK(std::abs(g3 - g2) < 0.2 * std::abs(g2 - g1));
}
