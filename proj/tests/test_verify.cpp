#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "lhdeform/milne_pinney.hpp"
#include "lhdeform/oscillators.hpp"
#include "lhdeform/sisf.hpp"
#include "lhdeform/sl2_plane.hpp"
#include "lhdeform/verify.hpp"

using namespace lhd;

TEST_CASE("sampling is deterministic and respects the domain") {
  SampleSpec spec;
  spec.count = 50;
  spec.box = {-1, 1, 0, 2};
  const DomainPredicate upper = [](PhasePoint p) { return p.x > 0; };
  const auto a = sample_points(spec, upper), b = sample_points(spec, upper);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].x > 0);
    CHECK(a[i].y >= 0);
    CHECK(a[i].y <= 2);
  }
  spec.seed = 1;
  CHECK(sample_points(spec, upper)[0].x != a[0].x);
  spec.rejection_budget = 10;
  CHECK_THROWS_AS(sample_points(spec, [](PhasePoint) { return false; }), DomainError);
}

TEST_CASE("error accumulator") {
  ErrorAccumulator acc("acc", 1e-3);
  acc.add(1e-4, 10, {1});
  acc.add(2e-3, 5, {2});
  acc.add(5e-4, 0.1, {3});
  const CheckReport r = acc.finish("n");
  CHECK(r.samples == 3);
  CHECK(r.max_abs == 2e-3);
  CHECK(r.max_rel == doctest::Approx(5e-4));
  CHECK(r.worst_point == std::vector<double>{3});
  CHECK(r.pass);
  CHECK(r.notes == "n");
  ErrorAccumulator bad("bad", 1e-3);
  bad.add(std::nan(""), 1, {0});
  CHECK_FALSE(bad.finish().pass);
}

TEST_CASE("bracket checks and negative controls") {
  SampleSpec spec;
  const auto mp = mp_family(4.0);
  const CheckReport ok = check_brackets(mp, mp.bracket_table, spec);
  CHECK(ok.pass);
  CHECK(ok.samples == spec.count * mp.bracket_table.size());
  CHECK(ok.max_rel < 1e-12);

  const auto bad = corrupt_generator(mp, 1);
  const CheckReport r = check_brackets(bad, bad.bracket_table, spec);
  CHECK_FALSE(r.pass);
  CHECK(r.max_abs >= 1e-3);
  REQUIRE(r.worst_point.size() >= 2);
  CHECK(mp.domain({r.worst_point[0], r.worst_point[1]}));
  CHECK_FALSE(check_field_consistency(bad, spec).pass);
  CHECK(check_field_consistency(mp, spec).pass);
  CHECK_THROWS_AS(corrupt_generator(mp, 7), std::invalid_argument);

  SisfParams prm;
  prm.z = 0.2;
  const DeformedTriple tr = sisf_deformed(prm).triple;
  CHECK(check_brackets(tr, deformed_sl2_relations(tr), spec).pass);
  CHECK(check_field_consistency(tr, spec).pass);
}

TEST_CASE("bracket check is byte-stable") {
  SampleSpec spec;
  spec.count = 40;
  const auto fam = sl2_class_family(Sl2Class::I4);
  std::ostringstream a, b;
  write_csv(a, {check_brackets(fam, fam.bracket_table, spec), check_field_consistency(fam, spec)});
  write_csv(b, {check_brackets(fam, fam.bracket_table, spec), check_field_consistency(fam, spec)});
  CHECK(a.str() == b.str());
}

TEST_CASE("gradient and commutator checks") {
  SampleSpec spec;
  spec.count = 30;
  spec.box = {0.5, 2, -1, 1};
  const auto fam = h6_family();
  CHECK(check_gradients("h6", fam.hams, fam.domain, spec).pass);

  const DeformedTriple tr = mt_deform(sl2_canonical_family(1.0), 0.3);
  const double z = 0.3;
  std::vector<Commutator> expected{
      {0, 1,
       [tr, z](PhasePoint p) {
         const double c = std::cosh(2 * z * tr.h[0](p));
         const Vec2 X = tr.X[0](p);
         return Vec2{c * X[0], c * X[1]};
       },
       "[X1,X2]=cosh X1"}};
  const std::vector<VectorField2> X(tr.X.begin(), tr.X.end());
  CHECK(check_commutators("mt", X, expected, tr.domain, spec).pass);
  expected[0].rhs = [](PhasePoint) { return Vec2{0, 0}; };
  CHECK_FALSE(check_commutators("mt-wrong", X, expected, tr.domain, spec).pass);
  const std::vector<VectorField2> zero{[](PhasePoint) { return Vec2{0, 0}; }, [](PhasePoint) { return Vec2{0, 0}; }};
  CHECK(check_commutators("zero", zero, {{0, 1, [](PhasePoint) { return Vec2{0, 0}; }, "0"}}, {}, spec).pass);
}

TEST_CASE("invariant drift") {
  const OdeField osc = [](double, const State& s) { return State{s[1], -s[0]}; };
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-10;
  const StateFunction energy = [](const State& s) { return s[0] * s[0] + s[1] * s[1]; };
  const StateFunction constant = [](const State&) { return 3.0; };
  const CheckReport r = invariant_drift("osc", osc, {energy, constant}, {1.0, 0.5}, 0, 10, cfg);
  CHECK(r.pass);
  CHECK(r.max_rel < 1e-8);
  CHECK(r.samples == 2 * 201);
  CHECK(invariant_drift("c", osc, {constant}, {1.0, 0.5}, 0, 1, cfg).max_abs == 0.0);

  const StateFunction x = [](const State& s) { return s[0]; };
  CHECK_FALSE(invariant_drift("x", osc, {x}, {1.0, 0.5}, 0, 1, cfg).pass);
  const OdeField blow = [](double, const State& s) { return State{s[0] * s[0]}; };
  const CheckReport b = invariant_drift("blow", blow, {constant}, {1.0}, 0, 2, cfg);
  CHECK_FALSE(b.pass);
  CHECK(b.max_rel == std::numeric_limits<double>::infinity());
  CHECK(b.notes.find("integration failed") != std::string::npos);
}

TEST_CASE("convergence order") {
  const CheckReport q = convergence_order("quad", [](double z) { return 3 * z * z; }, 0.1, 5, 2, 1e-3);
  CHECK(q.pass);
  CHECK(q.value == doctest::Approx(2).epsilon(1e-12));
  const DeformedTriple cl = mp_deformed_triple(4, 0);
  const PhasePoint p{1.1, 0.4};
  const CheckReport mp = convergence_order(
      "mp h2", [&](double z) { return mp_deformed_triple(4, z).h[1](p) - cl.h[1](p); }, 0.05, 5, 2, 0.2);
  CHECK(mp.pass);
  CHECK_FALSE(convergence_order("lin", [](double z) { return z; }, 0.1, 4, 2, 0.2).pass);
  CHECK_THROWS_AS(convergence_order("zero", [](double) { return 0.0; }, 0.1, 4, 2, 0.2), DomainError);
  CHECK_THROWS_AS(convergence_order("bad", [](double z) { return z; }, 0.1, 0, 2, 0.2), std::invalid_argument);
}

TEST_CASE("superposition residual") {
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  const auto ts = linspace(0, 5, 50);
  const auto f = plane_ode(damped_field({TimeCoefficient::constant(0.1), TimeCoefficient::constant(1),
                                         TimeCoefficient::constant(1), TimeCoefficient::constant(0),
                                         TimeCoefficient::constant(0)}));
  const auto t = integrate_at(f, ts, {0.5, 0.1}, cfg);
  const std::vector<std::vector<State>> parts{integrate_at(f, ts, {-0.3, 0.8}, cfg),
                                              integrate_at(f, ts, {1.1, -0.4}, cfg),
                                              integrate_at(f, ts, {0.2, -1.0}, cfg)};
  const RuleFactory damped = [](const State& x0, const std::vector<State>& p0) -> SuperposeFn {
    const PhasePoint a = point_of(x0), b = point_of(p0[0]), c = point_of(p0[1]), d = point_of(p0[2]);
    const double r1 = damped_area(a, b, c), r2 = damped_area(a, c, d);
    return [r1, r2](const std::vector<State>& p) {
      const PhasePoint x = damped_superpose_signed(point_of(p[0]), point_of(p[1]), point_of(p[2]), r1, r2);
      return State{x.x, x.y};
    };
  };
  const CheckReport r = superposition_residual("damped", damped, t, parts, ts, 1e-5);
  CHECK(r.pass);

  const RuleFactory copy = [](const State&, const std::vector<State>&) -> SuperposeFn {
    return [](const std::vector<State>& p) { return p[0]; };
  };
  CHECK(superposition_residual("copy", copy, parts[0], parts, ts, 1e-14).max_abs == 0.0);

  const RuleFactory failing = [](const State&, const std::vector<State>&) -> SuperposeFn {
    return [](const std::vector<State>&) -> State { throw DomainError("nope"); };
  };
  const CheckReport e = superposition_residual("fail", failing, t, parts, ts, 1);
  CHECK_FALSE(e.pass);
  CHECK(e.notes.find("nope") != std::string::npos);
  CHECK_THROWS_AS(superposition_residual("short", copy, t, parts, {0.0}, 1), std::invalid_argument);
}

TEST_CASE("report output") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(1.0 / 3)) == 1.0 / 3);
  CheckReport r;
  r.name = "x";
  r.samples = 2;
  r.tol = 1e-8;
  r.pass = true;
  r.worst_point = {1, 2};
  r.notes = "a,b";
  std::ostringstream csv, txt;
  write_csv(csv, {r});
  const std::string s = csv.str();
  CHECK(s.rfind("check,pass,samples,max_abs,max_rel,tol,value,worst_point,notes\n", 0) == 0);
  CHECK(s.find("x,") != std::string::npos);
  CHECK(s.find("\"a,b\"") != std::string::npos);
  write_text(txt, {r});
  CHECK(txt.str().find("PASS") != std::string::npos);
}
