#include <cmath>

#include "doctest.h"
#include "lhdeform/core.hpp"
#include "lhdeform/sl2_plane.hpp"
#include "support.hpp"

using namespace lhd;
using lhdtest::fd_bracket;
using lhdtest::fd_grad;

TEST_CASE("TimeCoefficient kinds") {
  CHECK(TimeCoefficient::constant(2.5)(7.0) == 2.5);
  CHECK(TimeCoefficient::sinusoid(1, 2, 3, 0.5)(0.4) == doctest::Approx(1 + 2 * std::sin(1.2 + 0.5)));
  CHECK(TimeCoefficient::polynomial({1, -2, 3})(2.0) == doctest::Approx(1 - 4 + 12));
  const auto tab = TimeCoefficient::tabulated({0, 1, 3}, {0, 2, 4});
  CHECK(tab(-1) == 0);
  CHECK(tab(0.5) == doctest::Approx(1));
  CHECK(tab(2) == doctest::Approx(3));
  CHECK(tab(9) == 4);
  CHECK(TimeCoefficient::custom([](double t) { return t * t; })(3) == 9);
  CHECK(TimeCoefficient::squared(TimeCoefficient::sinusoid(0, 1, 1))(0.3) == doctest::Approx(std::pow(std::sin(0.3), 2)));
  CHECK(TimeCoefficient()(1.0) == 0.0);
  CHECK_THROWS_AS(TimeCoefficient::tabulated({1, 0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeCoefficient::tabulated({0, 1}, {0}), std::invalid_argument);
}

TEST_CASE("Poisson bracket and Hamiltonian field conventions") {
  const ScalarField fx{[](PhasePoint p) { return p.x; }, [](PhasePoint) { return Vec2{1, 0}; }};
  const ScalarField fy{[](PhasePoint p) { return p.y; }, [](PhasePoint) { return Vec2{0, 1}; }};
  const Density one = [](PhasePoint) { return 1.0; };
  const Density two = [](PhasePoint) { return 2.0; };
  CHECK(poisson_bracket(fx, fy, one, {0.3, 0.4}) == 1.0);
  CHECK(poisson_bracket(fy, fx, one, {0.3, 0.4}) == -1.0);
  CHECK(poisson_bracket(fx, fy, two, {0.3, 0.4}) == 0.5);
  // X_h = (h_y, -h_x)/lambda
  const Vec2 X = hamiltonian_field(fy, two)({0, 0});
  CHECK(X[0] == 0.5);
  CHECK(X[1] == 0.0);
  const Density zero = [](PhasePoint) { return 0.0; };
  CHECK_THROWS_AS(hamiltonian_field(fx, zero)({0, 0}), SingularError);
  CHECK_THROWS_AS(poisson_bracket(fx, fy, zero, {0, 0}), SingularError);
}

TEST_CASE("Lie bracket [X,Y] = DY.X - DX.Y") {
  const VectorField2 X = [](PhasePoint) { return Vec2{1, 0}; };
  const VectorField2 Y = [](PhasePoint p) { return Vec2{0, p.x * p.x}; };
  const Vec2 b = lie_bracket(X, Y, {1.5, -0.2});
  CHECK(b[0] == doctest::Approx(0).scale(1));
  CHECK(b[1] == doctest::Approx(3.0));
  const Vec2 zero = lie_bracket(Y, Y, {0.3, 0.7});
  CHECK(std::abs(zero[0]) + std::abs(zero[1]) < 1e-12);
}

TEST_CASE("mt_deform on the canonical realization: relations, Casimir and fields") {
  const double c = 1.7;
  for (double z : {0.0, 0.1, 0.6}) {
    const DeformedTriple tr = mt_deform(sl2_canonical_family(c), z);
    for (const PhasePoint p : lhdtest::grid(0.5, 2, -1.5, 1.5, 5)) {
      const double a = 2 * z * tr.h[0](p);
      auto val = [&](int k) { return [&tr, k](PhasePoint q) { return tr.h[k](q); }; };
      CHECK(lhdtest::rel_err(fd_bracket(val(0), val(1), 1, p), -sinhc(a) * tr.h[0](p)) < 1e-7);
      CHECK(lhdtest::rel_err(fd_bracket(val(0), val(2), 1, p), -2 * tr.h[1](p)) < 1e-7);
      CHECK(lhdtest::rel_err(fd_bracket(val(1), val(2), 1, p), -std::cosh(a) * tr.h[2](p)) < 1e-7);
      CHECK(sinhc(a) * tr.h[0](p) * tr.h[2](p) - tr.h[1](p) * tr.h[1](p) == doctest::Approx(c / 4).epsilon(1e-12));
      for (int k = 0; k < 3; ++k) {
        const auto g = fd_grad(val(k), p);
        const Vec2 X = tr.X[k](p);
        CHECK(X[0] == doctest::Approx(g[1]).epsilon(1e-7));
        CHECK(X[1] == doctest::Approx(-g[0]).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("mt_deform at z = 0 returns the classical generators") {
  const auto fam = sl2_canonical_family(2.0);
  const DeformedTriple tr = mt_deform(fam, 0.0);
  const PhasePoint p{0.8, -0.3};
  for (int k = 0; k < 3; ++k) {
    CHECK(tr.h[k](p) == doctest::Approx(fam.hams[k](p)).epsilon(1e-15));
    CHECK(tr.X[k](p)[0] == doctest::Approx(fam.fields[k](p)[0]).epsilon(1e-14));
    CHECK(tr.X[k](p)[1] == doctest::Approx(fam.fields[k](p)[1]).epsilon(1e-14));
  }
}

TEST_CASE("deformed commutators of the vector fields") {
  const double z = 0.3, c = 1.0;
  const DeformedTriple tr = mt_deform(sl2_canonical_family(c), z);
  for (const PhasePoint p : lhdtest::grid(0.6, 1.6, -1, 1, 3)) {
    const double h1 = tr.h[0](p), a = 2 * z * h1, S = sinhc(a);
    const Vec2 b12 = lie_bracket(tr.X[0], tr.X[1], p), X1 = tr.X[0](p);
    CHECK(b12[0] == doctest::Approx(std::cosh(a) * X1[0]).epsilon(1e-6));
    CHECK(b12[1] == doctest::Approx(std::cosh(a) * X1[1]).epsilon(1e-6));
    const Vec2 b23 = lie_bracket(tr.X[1], tr.X[2], p), X3 = tr.X[2](p);
    const double k = 4 * z * z * S * h1 * tr.h[2](p);
    CHECK(b23[0] == doctest::Approx(std::cosh(a) * X3[0] + k * X1[0]).epsilon(1e-6));
    CHECK(b23[1] == doctest::Approx(std::cosh(a) * X3[1] + k * X1[1]).epsilon(1e-6));
  }
}

TEST_CASE("mt_deform rejects non-triples and singular points") {
  PlanarLHFamily two = sl2_canonical_family(1);
  two.hams.pop_back();
  CHECK_THROWS_AS(mt_deform(two, 0.1), std::invalid_argument);
  const DeformedTriple tr = mt_deform(sl2_canonical_family(1), 0.1);
  CHECK_THROWS_AS(tr.h[2]({0.0, 1.0}), SingularError);
}

TEST_CASE("coproduct values follow the ordered exponential form") {
  const double z = 0.25;
  const DeformedTriple tr = mt_deform(sl2_canonical_family(1.0), z);
  const PhasePoint a{0.7, 0.2}, b{1.3, -0.4}, c{0.9, 0.8};
  const auto v2 = two_copy_values(tr, a, b);
  CHECK(v2[0] == doctest::Approx(tr.h[0](a) + tr.h[0](b)));
  for (int k = 1; k < 3; ++k) {
    const double expect = tr.h[k](a) * std::exp(2 * z * tr.h[0](b)) + std::exp(-2 * z * tr.h[0](a)) * tr.h[k](b);
    CHECK(v2[k] == doctest::Approx(expect).epsilon(1e-14));
  }
  const std::array<PhasePoint, 3> pts{a, b, c};
  const auto v3 = n_copy_values(tr, pts).v;
  const double A = tr.h[0](a), B = tr.h[0](b), C = tr.h[0](c);
  for (int k = 1; k < 3; ++k) {
    const double expect = tr.h[k](a) * std::exp(2 * z * (B + C)) + std::exp(-2 * z * A) * tr.h[k](b) * std::exp(2 * z * C) +
                          std::exp(-2 * z * (A + B)) * tr.h[k](c);
    CHECK(v3[k] == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(v3[0] == doctest::Approx(A + B + C));
}

TEST_CASE("copy gradients agree with finite differences") {
  const DeformedTriple tr = mt_deform(sl2_canonical_family(1.0), 0.4);
  std::array<PhasePoint, 2> pts{PhasePoint{0.7, 0.2}, PhasePoint{1.3, -0.4}};
  const CopyValues cv = n_copy_values(tr, pts, true);
  REQUIRE(cv.grad.size() == 2);
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < 3; ++k) {
      const auto g = fd_grad(
          [&](PhasePoint q) {
            auto pp = pts;
            pp[m] = q;
            return n_copy_values(tr, pp).v[k];
          },
          pts[m]);
      CHECK(cv.grad[m][k][0] == doctest::Approx(g[0]).epsilon(1e-7));
      CHECK(cv.grad[m][k][1] == doctest::Approx(g[1]).epsilon(1e-7));
    }
}

TEST_CASE("one-copy coupled flow equals the combined deformed field") {
  const DeformedTriple tr = mt_deform(sl2_canonical_family(1.0), 0.2);
  const auto f = coupled_copy_field(tr, {TimeCoefficient::constant(0.3), TimeCoefficient::constant(-1),
                                         TimeCoefficient::sinusoid(0, 1, 1)},
                                    1);
  const PhasePoint p{0.9, 0.4};
  const double t = 0.7;
  const State v = f(t, {p.x, p.y});
  const double b3 = std::sin(t);
  for (int i = 0; i < 2; ++i) CHECK(v[i] == doctest::Approx(0.3 * tr.X[0](p)[i] - tr.X[1](p)[i] + b3 * tr.X[2](p)[i]));
}

TEST_CASE("two-copy Casimir is conserved by the coupled flow") {
  const DeformedTriple tr = mt_deform(sl2_canonical_family(1.0), 0.3);
  const auto f = coupled_copy_field(tr, {TimeCoefficient::constant(0.5), TimeCoefficient::sinusoid(0, 1, 2),
                                         TimeCoefficient::constant(0.2)},
                                    2);
  const State s0{0.9, 0.1, 1.2, -0.2};
  const auto F = [&](const State& s) { return casimir_F(tr, two_copy_values(tr, point_of(s, 0), point_of(s, 1))); };
  const auto ys = integrate_at(f, linspace(0, 2, 20), s0, {}, copies_domain(tr.domain, 2));
  for (const auto& s : ys) CHECK(F(s) == doctest::Approx(F(s0)).epsilon(1e-8));
}

TEST_CASE("sl2 relation tables") {
  const auto fam = sl2_canonical_family(1.0);
  const auto rel = sl2_relations(fam.hams);
  REQUIRE(rel.size() == 3);
  CHECK(rel[0].label == "{h1,h2}=-h1");
  const PhasePoint p{0.8, 0.3};
  for (const auto& r : rel) CHECK(poisson_bracket(fam.hams[r.i], fam.hams[r.j], fam.lambda, p) == doctest::Approx(r.rhs(p)));
  CHECK_THROWS_AS(sl2_relations({fam.hams[0]}), std::invalid_argument);
}

TEST_CASE("plane_ode adapters") {
  const TimeField2 f = [](double t, PhasePoint p) { return Vec2{t * p.y, -p.x}; };
  const State v = plane_ode(f)(2.0, {1.0, 3.0});
  CHECK(v == State{6.0, -1.0});
  const State w = plane_ode_copies(f, 2)(1.0, {1.0, 3.0, 5.0, 7.0});
  CHECK(w == State{3.0, -1.0, 7.0, -5.0});
}
