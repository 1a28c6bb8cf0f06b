#include "lhdeform/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lhdeform/sl2_plane.hpp"

namespace lhd {

namespace {

void check_branch(int b) {
  if (b != 1 && b != -1) throw std::invalid_argument("branch must be +1 or -1");
}

double root_neg(double p) {
  if (!(p < 0)) throw DomainError("second-order Riccati: p must be negative");
  return std::sqrt(-p);
}

bool p_negative(PhasePoint p) { return p.y < 0 && std::isfinite(p.x) && std::isfinite(p.y); }

// Cyclic (x_j - x_k) s_j s_k + (x_k - x_i) s_k s_i + (x_i - x_j) s_i s_j.
double cyclic(PhasePoint a, PhasePoint b, PhasePoint c) {
  const double sa = root_neg(a.y), sb = root_neg(b.y), sc = root_neg(c.y);
  return (b.x - c.x) * sb * sc + (c.x - a.x) * sc * sa + (a.x - b.x) * sa * sb;
}

}  // namespace

PlanarLHFamily complex_riccati_family() {
  PlanarLHFamily f = sl2_class_family(Sl2Class::P2);
  f.name = "complex_riccati";
  return f;
}

DeformedTriple complex_riccati_deformed(double z) {
  DeformedTriple tr = table42_triple(Sl2Class::P2, z);
  tr.name = "complex_riccati_deformed";
  return tr;
}

double complex_riccati_F2(PhasePoint a, PhasePoint b) { return class_F2(Sl2Class::P2, a, b); }

double complex_riccati_F2_deformed(double z, PhasePoint a, PhasePoint b) {
  return class_F2_deformed(Sl2Class::P2, z, a, b);
}

PhasePoint mp_complex_map(PhasePoint uv, int branch, double c) {
  check_branch(branch);
  if (uv.y == 0.0) throw SingularError("complex Riccati map: v = 0");
  if (c <= 0) throw std::invalid_argument("complex Riccati map needs c > 0");
  const double k = std::pow(c, 0.25) / std::sqrt(std::abs(uv.y));
  return {branch * k, -branch * k * uv.x};
}

PhasePoint mp_complex_inverse(PhasePoint xy, int v_sign, double c) {
  check_branch(v_sign);
  if (xy.x == 0.0) throw SingularError("complex Riccati map: x = 0");
  if (c <= 0) throw std::invalid_argument("complex Riccati map needs c > 0");
  return {-xy.y / xy.x, v_sign * std::sqrt(c) / (xy.x * xy.x)};
}

PlanarLHFamily coupled_riccati_family() {
  PlanarLHFamily f = sl2_class_family(Sl2Class::I4);
  f.name = "coupled_riccati";
  return f;
}

DeformedTriple coupled_riccati_deformed(double z) {
  DeformedTriple tr = table42_triple(Sl2Class::I4, z);
  tr.name = "coupled_riccati_deformed";
  return tr;
}

double coupled_riccati_F2(PhasePoint a, PhasePoint b) { return class_F2(Sl2Class::I4, a, b); }

double coupled_riccati_F2_deformed(double z, PhasePoint a, PhasePoint b) {
  const double d1 = a.x - a.y, d2 = b.x - b.y;
  if (d1 == 0.0 || d2 == 0.0) throw DomainError("coupled Riccati: u = v");
  const double a1 = 2 * z / d1, a2 = 2 * z / d2, s1 = sinhc(a1), s2 = sinhc(a2);
  const double m = a.x - b.x + a.y - b.y;
  const double inner = s1 * s2 * m * m - (std::exp(a1) * d1 / s1 + std::exp(-a2) * d2 / s2) * sinhc(a1 + a2) *
                                             (a.x + b.x - a.y - b.y);
  return std::exp(-a1) * std::exp(a2) / (4 * d1 * d2) * inner;
}

PhasePoint mp_coupled_map(PhasePoint uv, int branch, double c) {
  check_branch(branch);
  const double d = uv.x - uv.y;
  if (d == 0.0) throw SingularError("coupled Riccati map: u = v");
  if (c == 0.0) throw std::invalid_argument("coupled Riccati map needs c != 0");
  const double k = std::pow(4 * std::abs(c), 0.25) / std::sqrt(std::abs(d));
  return {branch * k, -branch * k * (uv.x + uv.y) / 2};
}

PhasePoint mp_coupled_inverse(PhasePoint xy, int branch, double c) {
  check_branch(branch);
  if (xy.x == 0.0) throw SingularError("coupled Riccati map: x = 0");
  if (c == 0.0) throw std::invalid_argument("coupled Riccati map needs c != 0");
  const double r = std::sqrt(std::abs(c)) / (xy.x * xy.x), m = -xy.y / xy.x;
  return {branch * r + m, -branch * r + m};
}

PlanarLHFamily so_riccati_family() {
  PlanarLHFamily f;
  f.name = "so_riccati";
  f.casimir_c = 0;
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = p_negative;
  f.box = {-2, 2, -3, -0.3};
  f.fields = {
      [](PhasePoint p) { return Vec2{1 / root_neg(p.y), 0}; },
      [](PhasePoint) { return Vec2{1, 0}; },
      [](PhasePoint p) { return Vec2{p.x, -p.y}; },
      [](PhasePoint p) { return Vec2{p.x * p.x, -2 * p.x * p.y}; },
      [](PhasePoint p) { return Vec2{p.x / root_neg(p.y), 2 * root_neg(p.y)}; },
  };
  f.hams = {
      {[](PhasePoint p) { return -2 * root_neg(p.y); }, [](PhasePoint p) { return Vec2{0, 1 / root_neg(p.y)}; }},
      {[](PhasePoint p) { return p.y; }, [](PhasePoint) { return Vec2{0, 1}; }},
      {[](PhasePoint p) { return p.x * p.y; }, [](PhasePoint p) { return Vec2{p.y, p.x}; }},
      {[](PhasePoint p) { return p.x * p.x * p.y; }, [](PhasePoint p) { return Vec2{2 * p.x * p.y, p.x * p.x}; }},
      {[](PhasePoint p) { return -2 * p.x * root_neg(p.y); },
       [](PhasePoint p) { return Vec2{-2 * root_neg(p.y), p.x / root_neg(p.y)}; }},
  };
  const auto& h = f.hams;
  auto k = [](double a, ScalarField g) { return [a, g](PhasePoint p) { return a * g(p); }; };
  auto zero = [](PhasePoint) { return 0.0; };
  f.bracket_table = {
      {0, 1, zero, "{h1,h2}=0"},
      {0, 2, k(-0.5, h[0]), "{h1,h3}=-h1/2"},
      {0, 3, k(-1, h[4]), "{h1,h4}=-h5"},
      {0, 4, [](PhasePoint) { return 2.0; }, "{h1,h5}=2"},
      {1, 2, k(-1, h[1]), "{h2,h3}=-h2"},
      {1, 3, k(-2, h[2]), "{h2,h4}=-2h3"},
      {1, 4, k(-1, h[0]), "{h2,h5}=-h1"},
      {2, 3, k(-1, h[3]), "{h3,h4}=-h4"},
      {2, 4, k(-0.5, h[4]), "{h3,h5}=-h5/2"},
      {3, 4, zero, "{h4,h5}=0"},
  };
  return f;
}

TimeField2 so_riccati_field(const SoRiccatiCoeffs& co) {
  return [co](double t, PhasePoint p) {
    const double s = root_neg(p.y), a0 = co.a0(t), a1 = co.a1(t), a2 = co.a2(t);
    return Vec2{1 / s - a0 - a1 * p.x - a2 * p.x * p.x, p.y * (a1 + 2 * a2 * p.x)};
  };
}

SoRiccatiIntegrals so_riccati_integrals(PhasePoint p1, PhasePoint p2, PhasePoint p3, std::optional<PhasePoint> p0) {
  SoRiccatiIntegrals out;
  out.F0 = cyclic(p1, p2, p3);
  if (p0) {
    out.F1 = cyclic(*p0, p1, p2);
    out.F2 = cyclic(*p0, p1, p3);
  }
  return out;
}

PhasePoint so_riccati_superpose(PhasePoint a, PhasePoint b, PhasePoint c, double k1, double k2) {
  const double s1 = root_neg(a.y), s2 = root_neg(b.y), s3 = root_neg(c.y);
  const double x1 = a.x, x2 = b.x, x3 = c.x;
  const double F0 = cyclic(a, b, c);
  const double den = k1 * (s1 - s3) + k2 * (s2 - s1) - s1 * F0;
  const double scale = std::max({1.0, std::abs(k1), std::abs(k2)}) * std::max({s1, s2, s3, 1.0});
  if (std::abs(F0) <= 1e-14 * scale || std::abs(den) <= 1e-14 * scale * std::max(1.0, std::abs(F0)))
    throw DomainError("second-order Riccati superposition: degenerate configuration");
  const double g13 = s1 * x1 - s3 * x3, g21 = s2 * x2 - s1 * x1;
  const double x0 = (k1 * g13 + k2 * g21 - F0 * x1 * s1) / den;
  const double r = k1 / F0 * (s3 - s1) + k2 / F0 * (s1 - s2) + s1;
  return {x0, -r * r};
}

}  // namespace lhd
