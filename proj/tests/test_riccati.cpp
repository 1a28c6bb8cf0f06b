#include <cmath>

#include "doctest.h"
#include "lhdeform/milne_pinney.hpp"
#include "lhdeform/riccati.hpp"
#include "lhdeform/sl2_plane.hpp"
#include "support.hpp"

using namespace lhd;

TEST_CASE("Riccati families close on sl(2)") {
  for (const auto& fam : {complex_riccati_family(), coupled_riccati_family()}) {
    auto h = [&](int k) { return [&fam, k](PhasePoint q) { return fam.hams[k](q); }; };
    for (const PhasePoint p : lhdtest::grid(fam.box.x0, fam.box.x1, fam.box.y0, fam.box.y1, 4, fam.domain)) {
      const double l = fam.lambda(p);
      for (const auto& r : fam.bracket_table)
        CHECK(lhdtest::rel_err(lhdtest::fd_bracket(h(r.i), h(r.j), l, p), r.rhs(p)) < 1e-7);
    }
  }
  CHECK(complex_riccati_family().casimir_c / 4 == 1.0);
  CHECK(coupled_riccati_family().casimir_c / 4 == -0.25);
}

TEST_CASE("Riccati deformed triples are the generic deformation") {
  for (double z : {0.05, 0.2}) {
    const DeformedTriple a = complex_riccati_deformed(z), b = mt_deform(complex_riccati_family(), z);
    const DeformedTriple c = coupled_riccati_deformed(z), d = mt_deform(coupled_riccati_family(), z);
    for (int k = 0; k < 3; ++k) {
      CHECK(lhdtest::rel_err(a.h[k]({0.3, 1.2}), b.h[k]({0.3, 1.2})) < 1e-12);
      CHECK(lhdtest::rel_err(c.h[k]({1.4, -0.3}), d.h[k]({1.4, -0.3})) < 1e-12);
    }
  }
}

TEST_CASE("coincident copies give the doubled Casimir") {
  CHECK(complex_riccati_F2({0.3, 1.2}, {0.3, 1.2}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(coupled_riccati_F2({1.4, -0.3}, {1.4, -0.3}) == doctest::Approx(-1.0).epsilon(1e-12));
  const PhasePoint a{0.3, 1.2}, b{-0.5, 0.8}, u{1.4, -0.3}, v{1.8, -0.6};
  CHECK(complex_riccati_F2_deformed(0, a, b) == doctest::Approx(complex_riccati_F2(a, b)).epsilon(1e-12));
  CHECK(coupled_riccati_F2_deformed(0, u, v) == doctest::Approx(coupled_riccati_F2(u, v)).epsilon(1e-12));
  for (double z : {0.05, 0.2}) {
    const auto tc = complex_riccati_deformed(z), td = coupled_riccati_deformed(z);
    CHECK(complex_riccati_F2_deformed(z, a, b) == doctest::Approx(casimir_F(tc, two_copy_values(tc, a, b))).epsilon(1e-12));
    CHECK(coupled_riccati_F2_deformed(z, u, v) == doctest::Approx(casimir_F(td, two_copy_values(td, u, v))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(coupled_riccati_F2_deformed(0.1, {1, 1}, u), DomainError);
}

TEST_CASE("deformed Riccati constants are conserved by the coupled flow") {
  const std::array<TimeCoefficient, 3> b{TimeCoefficient::constant(1), TimeCoefficient::sinusoid(0, 1, 1),
                                       TimeCoefficient::constant(0.3)};
  for (double z : {0.05, 0.2}) {
    {
      const auto tr = complex_riccati_deformed(z);
      const State s0{0.3, 1.2, -0.5, 0.8};
      const auto ys = integrate_at(coupled_copy_field(tr, b, 2), linspace(0, 1, 10), s0, {}, copies_domain(tr.domain, 2));
      const double F0 = complex_riccati_F2_deformed(z, point_of(s0, 0), point_of(s0, 1));
      for (const auto& s : ys)
        CHECK(lhdtest::rel_err(complex_riccati_F2_deformed(z, point_of(s, 0), point_of(s, 1)), F0) < 1e-7);
    }
    {
      const auto tr = coupled_riccati_deformed(z);
      const State s0{1.4, -0.3, 1.8, -0.6};
      const auto ys = integrate_at(coupled_copy_field(tr, b, 2), linspace(0, 1, 10), s0, {}, copies_domain(tr.domain, 2));
      const double F0 = coupled_riccati_F2_deformed(z, point_of(s0, 0), point_of(s0, 1));
      for (const auto& s : ys)
        CHECK(lhdtest::rel_err(coupled_riccati_F2_deformed(z, point_of(s, 0), point_of(s, 1)), F0) < 1e-7);
    }
  }
}

TEST_CASE("maps to the Milne-Pinney plane") {
  const PhasePoint m = mp_complex_map({0, 1}, 1, 4);
  CHECK(m.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.y == 0.0);
  for (int br : {1, -1}) {
    const PhasePoint uv{0.4, 1.3};
    const PhasePoint back = mp_complex_inverse(mp_complex_map(uv, br), 1);
    CHECK(back.x == doctest::Approx(uv.x).epsilon(1e-14));
    CHECK(back.y == doctest::Approx(uv.y).epsilon(1e-14));
    const PhasePoint uv2{0.9, -0.2};
    const PhasePoint back2 = mp_coupled_inverse(mp_coupled_map(uv2, br), 1);
    CHECK(back2.x == doctest::Approx(uv2.x).epsilon(1e-14));
    CHECK(back2.y == doctest::Approx(uv2.y).epsilon(1e-14));
  }
  CHECK_THROWS_AS(mp_complex_map({1, 0}), SingularError);
  CHECK_THROWS_AS(mp_coupled_map({1, 1}), SingularError);
  CHECK_THROWS_AS(mp_complex_map({0, 1}, 2), std::invalid_argument);
}

TEST_CASE("MP maps carry the Casimir value") {
  const PhasePoint uv{0.4, 1.3}, uv2{0.9, -0.2};
  const auto mp4 = mp_family(4.0), mpm = mp_family(-1.0);
  const auto cr = complex_riccati_family(), cp = coupled_riccati_family();
  auto cas = [](const PlanarLHFamily& f, PhasePoint p) {
    return f.hams[0](p) * f.hams[2](p) - std::pow(f.hams[1](p), 2);
  };
  CHECK(cas(cr, uv) == doctest::Approx(cas(mp4, mp_complex_map(uv))).epsilon(1e-12));
  CHECK(cas(cp, uv2) == doctest::Approx(cas(mpm, mp_coupled_map(uv2))).epsilon(1e-12));
}

TEST_CASE("second-order Riccati family") {
  const auto fam = so_riccati_family();
  const auto pts = lhdtest::grid(fam.box.x0, fam.box.x1, fam.box.y0, fam.box.y1, 4, fam.domain);
  auto h = [&](int k) { return [&fam, k](PhasePoint q) { return fam.hams[k](q); }; };
  for (const PhasePoint p : pts) {
    for (const auto& r : fam.bracket_table)
      CHECK(lhdtest::rel_err(lhdtest::fd_bracket(h(r.i), h(r.j), 1, p), r.rhs(p)) < 1e-7);
    for (int k = 0; k < 5; ++k) {
      const auto g = lhdtest::fd_grad(h(k), p);
      CHECK(lhdtest::rel_err(fam.fields[k](p)[0], g[1]) < 1e-7);
      CHECK(lhdtest::rel_err(fam.fields[k](p)[1], -g[0]) < 1e-7);
    }
  }
  const Vec2 b24 = lie_bracket(fam.fields[1], fam.fields[3], {1, -1});
  const Vec2 X3 = fam.fields[2]({1, -1});
  CHECK(b24[0] == doctest::Approx(2 * X3[0]).epsilon(1e-8));
  CHECK(b24[1] == doctest::Approx(2 * X3[1]).epsilon(1e-8));
  CHECK_FALSE(fam.domain({0, 0.5}));
}

TEST_CASE("second-order Riccati field") {
  SoRiccatiCoeffs co;
  co.a0 = TimeCoefficient::constant(1);
  co.a1 = TimeCoefficient::constant(0.2);
  co.a2 = TimeCoefficient::constant(0.1);
  const auto fam = so_riccati_family();
  const PhasePoint p{0.7, -2.0};
  const Vec2 v = so_riccati_field(co)(0, p);
  for (int i = 0; i < 2; ++i)
    CHECK(v[i] == doctest::Approx(fam.fields[0](p)[i] - fam.fields[1](p)[i] - 0.2 * fam.fields[2](p)[i] -
                                  0.1 * fam.fields[3](p)[i]));
  CHECK_THROWS_AS(so_riccati_field(co)(0, {0, 1}), DomainError);
}

TEST_CASE("second-order Riccati integrals") {
  CHECK(so_riccati_integrals({1, -1}, {2, -4}, {0, -9}).F0 == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(so_riccati_integrals({1, -1}, {1, -1}, {0, -9}).F0 == 0.0);
  CHECK_FALSE(so_riccati_integrals({1, -1}, {2, -4}, {0, -9}).F1.has_value());
  const auto all = so_riccati_integrals({1, -1}, {2, -4}, {0, -9}, PhasePoint{0.5, -2});
  REQUIRE(all.F1.has_value());
  REQUIRE(all.F2.has_value());

  SoRiccatiCoeffs co;
  co.a1 = TimeCoefficient::sinusoid(0, 0.2, 1);
  co.a2 = TimeCoefficient::constant(0.1);
  const State s0{0.1, -1.0, 0.8, -2.0, -0.6, -0.7, 0.3, -1.5};
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  const auto dom = copies_domain(so_riccati_family().domain, 4);
  const auto ys = integrate_at(plane_ode_copies(so_riccati_field(co), 4), linspace(0, 5, 25), s0, cfg, dom);
  auto ints = [](const State& s) {
    return so_riccati_integrals(point_of(s, 1), point_of(s, 2), point_of(s, 3), point_of(s, 0));
  };
  const auto I0 = ints(s0);
  for (const auto& s : ys) {
    const auto I = ints(s);
    CHECK(lhdtest::rel_err(I.F0, I0.F0) < 1e-8);
    CHECK(lhdtest::rel_err(*I.F1, *I0.F1) < 1e-8);
    CHECK(lhdtest::rel_err(*I.F2, *I0.F2) < 1e-8);
    const PhasePoint x = so_riccati_superpose(point_of(s, 1), point_of(s, 2), point_of(s, 3), *I0.F1, *I0.F2);
    CHECK(std::abs(x.x - s[0]) < 1e-5);
    CHECK(std::abs(x.y - s[1]) < 1e-5);
  }
  CHECK_THROWS_AS(so_riccati_superpose({1, -1}, {1, -1}, {0, -9}, 1, 1), DomainError);
  CHECK_THROWS_AS(so_riccati_integrals({1, 1}, {2, -4}, {0, -9}), DomainError);
}
