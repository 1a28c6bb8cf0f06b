#include "lhdeform/milne_pinney.hpp"

#include <cmath>
#include <limits>

namespace lhd {

namespace {

bool x_nonzero(PhasePoint p) { return p.x != 0.0 && std::isfinite(p.x) && std::isfinite(p.y); }

void require_x(PhasePoint p) {
  if (!x_nonzero(p)) throw SingularError("Milne-Pinney: x = 0");
}

// a / tanh(a), continuous at 0.
double a_coth(double a) {
  if (std::abs(a) < 1e-4) return 1 + a * a / 3;
  return a / std::tanh(a);
}

}  // namespace

PlanarLHFamily mp_family(double c) {
  PlanarLHFamily f;
  f.name = "milne_pinney";
  f.casimir_c = c;
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = x_nonzero;
  f.box = {0.5, 2, -2, 2};
  f.fields = {
      [](PhasePoint p) { return Vec2{0, -p.x}; },
      [](PhasePoint p) { return Vec2{-p.x / 2, p.y / 2}; },
      [c](PhasePoint p) { return Vec2{p.y, c / (p.x * p.x * p.x)}; },
  };
  f.hams = {
      {[](PhasePoint p) { return p.x * p.x / 2; }, [](PhasePoint p) { return Vec2{p.x, 0}; }},
      {[](PhasePoint p) { return -p.x * p.y / 2; }, [](PhasePoint p) { return Vec2{-p.y / 2, -p.x / 2}; }},
      {[c](PhasePoint p) { return (p.y * p.y + c / (p.x * p.x)) / 2; },
       [c](PhasePoint p) { return Vec2{-c / (p.x * p.x * p.x), p.y}; }},
  };
  f.bracket_table = sl2_relations(f.hams);
  return f;
}

DeformedTriple mp_deformed_triple(double c, double z) {
  DeformedTriple tr = mt_deform(mp_family(c), z);
  tr.name = "milne_pinney_deformed";
  return tr;
}

TimeField2 mp_deformed_rhs(const MpParams& params) {
  const double c = params.c, z = params.z;
  const TimeCoefficient om = params.omega;
  return [c, z, om](double t, PhasePoint p) {
    require_x(p);
    const double a = z * p.x * p.x, s = sinhc(a), ch = std::cosh(a), w = om(t);
    return Vec2{s * p.y, -w * w * p.x + c / (p.x * p.x * p.x) * ch / (s * s) + (s - ch) / p.x * p.y * p.y};
  };
}

OdeField mp_two_copy_field(const MpParams& params) {
  return coupled_copy_field(mp_deformed_triple(params.c, params.z),
                            {TimeCoefficient::squared(params.omega), TimeCoefficient::constant(0),
                             TimeCoefficient::constant(1)},
                            2);
}

double mp_F2(double c, PhasePoint a, PhasePoint b) {
  require_x(a);
  require_x(b);
  const double cross = a.x * b.y - b.x * a.y, s = a.x * a.x + b.x * b.x;
  return cross * cross / 4 + c / 4 * s * s / (a.x * a.x * b.x * b.x);
}

double mp_F2_deformed(double c, double z, PhasePoint a, PhasePoint b) {
  require_x(a);
  require_x(b);
  const double x1s = a.x * a.x, x2s = b.x * b.x;
  const double s1 = sinhc(z * x1s), s2 = sinhc(z * x2s), s12 = sinhc(z * (x1s + x2s));
  const double cross = a.x * b.y - b.x * a.y, sum = x1s + x2s;
  const double bracket = s1 * s2 * cross * cross + c * s12 * s12 / (s1 * s2) * sum * sum / (x1s * x2s);
  return bracket / 4 * std::exp(-z * x1s) * std::exp(z * x2s);
}

PdmProfile pdm_profile(double z, double x) {
  if (!std::isfinite(z) || !std::isfinite(x)) throw DomainError("pdm_profile: non-finite input");
  const double a = z * x * x;
  const double s = std::isinf(std::sinh(a)) ? std::numeric_limits<double>::infinity() : sinhc(a);
  PdmProfile out;
  out.m_z = 1 / s;
  out.U_osc = x * x * s;
  out.U_RW = 1 / (x * x * s * s);
  return out;
}

double mp_second_order_residual(const MpParams& params, double t, double x, double xdot, double xddot) {
  if (x == 0.0) throw SingularError("Milne-Pinney: x = 0");
  const double z = params.z, c = params.c, w = params.omega(t);
  const double a = z * x * x, ac = a_coth(a);
  // z x / tanh(z x^2) = ac / x and c z / (x tanh(z x^2)) = c ac / x^3
  return xddot + (1 / x - ac / x) * xdot * xdot + w * w * x * sinhc(a) - c * ac / (x * x * x);
}

}  // namespace lhd
