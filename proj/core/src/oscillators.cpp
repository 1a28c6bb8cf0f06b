#include "lhdeform/oscillators.hpp"

#include <cmath>
#include <stdexcept>

namespace lhd {

namespace {

bool finite_point(PhasePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

std::function<double(PhasePoint)> times(double a, ScalarField h) {
  return [a, h](PhasePoint p) { return a * h(p); };
}

double zero(PhasePoint) { return 0.0; }

}  // namespace

PlanarLHFamily h6_family() {
  PlanarLHFamily f;
  f.name = "h6";
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = finite_point;
  f.box = {-2, 2, -2, 2};
  f.fields = {
      [](PhasePoint) { return Vec2{0, 0}; },
      [](PhasePoint) { return Vec2{1, 0}; },
      [](PhasePoint) { return Vec2{0, 1}; },
      [](PhasePoint p) { return Vec2{p.x, -p.y}; },
      [](PhasePoint p) { return Vec2{p.y, 0}; },
      [](PhasePoint p) { return Vec2{0, p.x}; },
  };
  f.hams = {
      {[](PhasePoint) { return 1.0; }, [](PhasePoint) { return Vec2{0, 0}; }},
      {[](PhasePoint p) { return p.y; }, [](PhasePoint) { return Vec2{0, 1}; }},
      {[](PhasePoint p) { return -p.x; }, [](PhasePoint) { return Vec2{-1, 0}; }},
      {[](PhasePoint p) { return p.x * p.y; }, [](PhasePoint p) { return Vec2{p.y, p.x}; }},
      {[](PhasePoint p) { return p.y * p.y / 2; }, [](PhasePoint p) { return Vec2{0, p.y}; }},
      {[](PhasePoint p) { return -p.x * p.x / 2; }, [](PhasePoint p) { return Vec2{-p.x, 0}; }},
  };
  const auto& v = f.hams;
  f.bracket_table = {
      {1, 2, times(1, v[0]), "{v1,v2}=v0"},   {1, 3, times(-1, v[1]), "{v1,v3}=-v1"},
      {1, 4, zero, "{v1,v4}=0"},              {1, 5, times(-1, v[2]), "{v1,v5}=-v2"},
      {2, 3, times(1, v[2]), "{v2,v3}=v2"},   {2, 4, times(-1, v[1]), "{v2,v4}=-v1"},
      {2, 5, zero, "{v2,v5}=0"},              {3, 4, times(2, v[4]), "{v3,v4}=2v4"},
      {3, 5, times(-2, v[5]), "{v3,v5}=-2v5"}, {4, 5, times(1, v[3]), "{v4,v5}=v3"},
  };
  for (int k = 1; k <= 5; ++k) f.bracket_table.push_back({0, k, zero, "{v0,v" + std::to_string(k) + "}=0"});
  return f;
}

double h6_casimir(PhasePoint p) {
  const double v0 = 1, v1 = p.y, v2 = -p.x, v3 = p.x * p.y, v4 = p.y * p.y / 2, v5 = -p.x * p.x / 2;
  return 2 * (v1 * v1 * v5 - v2 * v2 * v4 - v1 * v2 * v3) - v0 * (v3 * v3 + 4 * v4 * v5);
}

double h6_F3(PhasePoint a, PhasePoint b, PhasePoint c) {
  const double s = a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y);
  return s * s;
}

TimeField2 damped_field(const DampedCoeffs& co) {
  return [co](double t, PhasePoint p) {
    const double a = co.a(t), b = co.b(t), c = co.c(t), d = co.d(t), f = co.f(t);
    return Vec2{f + a * p.x + b * p.y, -d - a * p.y - c * p.x};
  };
}

double damped_area(PhasePoint p1, PhasePoint p2, PhasePoint p3) {
  return (p2.x - p3.x) * p1.y + (p3.x - p1.x) * p2.y + (p1.x - p2.x) * p3.y;
}

double damped_F3(PhasePoint p1, PhasePoint p2, PhasePoint p3) {
  const double s = damped_area(p1, p2, p3);
  return s * s;
}

double damped_F3_14(PhasePoint p2, PhasePoint p3, PhasePoint p4) { return damped_F3(p4, p2, p3); }

double damped_F3_24(PhasePoint p1, PhasePoint p3, PhasePoint p4) { return damped_F3(p1, p4, p3); }

PhasePoint damped_superpose_signed(PhasePoint s2, PhasePoint s3, PhasePoint s4, double r1, double r2) {
  const double dx = s2.x - s3.x;
  if (dx == 0.0) throw DomainError("damped superposition: x2 = x3");
  const double G = damped_area(s4, s2, s3);
  if (G == 0.0) throw DomainError("damped superposition: degenerate particular solutions");
  const double x1 = s3.x + ((s4.x - s3.x) * r1 + dx * r2) / G;
  const double p1 = r1 / dx + s3.y + r2 * (s2.y - s3.y) / G + r1 * (s2.y - s3.y) * (s4.x - s3.x) / (G * dx);
  return {x1, p1};
}

PhasePoint damped_superpose(PhasePoint s2, PhasePoint s3, PhasePoint s4, double k1, double k2, int sign1,
                            int sign2) {
  if (k1 < 0 || k2 < 0) throw DomainError("damped superposition: constants must be non-negative");
  if (std::abs(sign1) != 1 || std::abs(sign2) != 1) throw std::invalid_argument("signs must be +1 or -1");
  return damped_superpose_signed(s2, s3, s4, sign1 * std::sqrt(k1), sign2 * std::sqrt(k2));
}

namespace {

// Shared deformed h4 pieces.
ScalarField h4_v1(double z) {
  return {[z](PhasePoint p) { return std::exp(-z * p.x) * p.y; },
          [z](PhasePoint p) {
            const double e = std::exp(-z * p.x);
            return Vec2{-z * e * p.y, e};
          }};
}

ScalarField h4_v3(double z) {
  return {[z](PhasePoint p) { return expm1_ratio(z, p.x) * p.y; },
          [z](PhasePoint p) { return Vec2{std::exp(-z * p.x) * p.y, expm1_ratio(z, p.x)}; }};
}

// (e^{zx} - 1)/z
double grow_ratio(double z, double x) { return expm1_ratio(-z, x); }

PlanarLHFamily h4_base(double z) {
  PlanarLHFamily f;
  f.name = "h4_deformed";
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = finite_point;
  f.box = {-2, 2, -2, 2};
  f.fields = {
      [](PhasePoint) { return Vec2{0, 0}; },
      [z](PhasePoint p) {
        const double e = std::exp(-z * p.x);
        return Vec2{e, z * e * p.y};
      },
      [](PhasePoint) { return Vec2{0, 1}; },
      [z](PhasePoint p) { return Vec2{expm1_ratio(z, p.x), -std::exp(-z * p.x) * p.y}; },
  };
  f.hams = {
      {[](PhasePoint) { return 1.0; }, [](PhasePoint) { return Vec2{0, 0}; }},
      h4_v1(z),
      {[](PhasePoint p) { return -p.x; }, [](PhasePoint) { return Vec2{-1, 0}; }},
      h4_v3(z),
  };
  return f;
}

}  // namespace

PlanarLHFamily h4_deformed_family(double z) {
  PlanarLHFamily f = h4_base(z);
  const ScalarField v1 = f.hams[1], v2 = f.hams[2];
  f.bracket_table = {
      {1, 2, [z, v2](PhasePoint p) { return std::exp(z * v2(p)); }, "{v1z,v2z}=v0 e^{z v2}"},
      {1, 3, [v1](PhasePoint p) { return -v1(p); }, "{v1z,v3z}=-v1z"},
      {2, 3, [z, v2](PhasePoint p) { return expm1_ratio(-z, v2(p)); },
       "{v2,v3}=(e^{z v2}-1)/z"},
  };
  for (int k = 1; k <= 3; ++k) f.bracket_table.push_back({0, k, zero, "{v0,v" + std::to_string(k) + "}=0"});
  return f;
}

TimeField2 h4_deformed_field(double z, std::array<TimeCoefficient, 3> f) {
  return [z, f](double t, PhasePoint p) {
    const double e = std::exp(-p.x * z), f1 = f[0](t), f2 = f[1](t), f3 = f[2](t);
    return Vec2{e * f1 + expm1_ratio(z, p.x) * f3, p.y * z * e * f1 + f2 - p.y * e * f3};
  };
}

H4Invariants h4_invariants(double z, PhasePoint a, PhasePoint b) {
  if (z == 0.0) return {0.0, (a.x - b.x) * (a.y - b.y)};
  const double e = std::exp(-z * a.x);
  const double Fz = e / z * (std::expm1(-z * a.x) + z * a.x) * a.y;
  const double s = a.x + b.x;
  const double Fz2 =
      (2 * (a.y + b.y) - std::exp(-z * s) * (2 + z * s) * (a.y * std::exp(z * b.x) + b.y * std::exp(z * a.x))) / z;
  return {Fz, Fz2};
}

PlanarLHFamily h6_deformed_family(double z) {
  PlanarLHFamily f = h4_base(z);
  f.name = "h6_deformed";
  f.fields.push_back([z](PhasePoint p) {
    const double e = std::exp(-z * p.x);
    return Vec2{e * p.y, z / 2 * e * p.y * p.y};
  });
  f.fields.push_back([z](PhasePoint p) { return Vec2{0, std::exp(z * p.x) * grow_ratio(z, p.x)}; });
  f.hams.push_back({[z](PhasePoint p) { return std::exp(-z * p.x) * p.y * p.y / 2; },
                    [z](PhasePoint p) {
                      const double e = std::exp(-z * p.x);
                      return Vec2{-z / 2 * e * p.y * p.y, e * p.y};
                    }});
  f.hams.push_back({[z](PhasePoint p) {
                      const double g = grow_ratio(z, p.x);
                      return -g * g / 2;
                    },
                    [z](PhasePoint p) { return Vec2{-grow_ratio(z, p.x) * std::exp(z * p.x), 0}; }});
  const auto v = f.hams;
  auto ez = [z, v](PhasePoint p) { return std::exp(z * v[2](p)); };
  auto emz = [z, v](PhasePoint p) { return std::exp(-z * v[2](p)); };
  // (e^{-z v2} - 1)/z
  auto down = [z, v](PhasePoint p) { return -expm1_ratio(z, v[2](p)); };
  // 2 v3 + v0 - 1
  auto w = [v](PhasePoint p) { return 2 * v[3](p) + v[0](p) - 1; };
  f.bracket_table = {
      {1, 2, [=](PhasePoint p) { return v[0](p) * ez(p); }, "{v1z,v2z}=v0 e^{z v2}"},
      {1, 3, [=](PhasePoint p) { return -v[1](p); }, "{v1z,v3z}=-v1z"},
      {1, 4, [=](PhasePoint p) { return -z * v[1](p) * v[1](p) / 2; }, "{v1z,v4z}=-z v1z^2/2"},
      {1, 5, down, "{v1z,v5z}=(e^{-z v2}-1)/z"},
      {2, 3, [=](PhasePoint p) { return expm1_ratio(-z, v[2](p)); }, "{v2,v3}=(e^{z v2}-1)/z"},
      {2, 4, [=](PhasePoint p) { return -v[1](p) / 2 * (1 + ez(p)) - z * ez(p) * v[0](p) / 4 * w(p); },
       "{v2z,v4z}"},
      {2, 5, zero, "{v2z,v5z}=0"},
      {3, 4, [=](PhasePoint p) { return 2 * v[4](p) - z * v[1](p) / 4 * w(p); }, "{v3z,v4z}"},
      {3, 5, [=](PhasePoint p) { return -2 * v[5](p); }, "{v3z,v5z}=-2v5z"},
      {4, 5,
       [=](PhasePoint p) {
         return v[3](p) * (1 + emz(p)) / 2 + (v[0](p) / 4 - 0.25) * (emz(p) - 1) - z * v[1](p) * v[5](p);
       },
       "{v4z,v5z}"},
  };
  for (int k = 1; k <= 5; ++k) f.bracket_table.push_back({0, k, zero, "{v0,v" + std::to_string(k) + "}=0"});
  return f;
}

TimeField2 h6_deformed_field(double z, std::array<TimeCoefficient, 5> f) {
  return [z, f](double t, PhasePoint p) {
    const double e = std::exp(-p.x * z), f1 = f[0](t), f2 = f[1](t), f3 = f[2](t), f4 = f[3](t), f5 = f[4](t);
    const double dx = e * f1 + expm1_ratio(z, p.x) * f3 + p.y * e * f4;
    const double dy = p.y * z * e * f1 + f2 - p.y * e * f3 + p.y * p.y * z / 2 * e * f4 +
                      std::exp(p.x * z) * grow_ratio(z, p.x) * f5;
    return Vec2{dx, dy};
  };
}

double h6_casimir_deformed(double z, PhasePoint p) {
  if (z == 0.0) return h6_casimir(p);
  const PlanarLHFamily fam = h6_deformed_family(z);
  double v[6];
  for (int k = 0; k < 6; ++k) v[k] = fam.hams[k](p);
  const double ez = std::exp(z * v[2]), em1 = std::expm1(z * v[2]);
  return z * v[0] * v[1] * v[5] * (2 * v[3] + v[0] - 1) - 2 * v[4] * em1 * em1 / (z * z) * std::exp(-2 * z * v[2]) +
         2 * v[1] * v[1] * v[5] - v[0] * v[3] * v[3] - 4 * v[0] * v[4] * v[5] -
         em1 * (2 * v[3] * (ez + 1) + (v[0] - 1) * (1 - ez)) / (z * std::exp(2 * z * v[2]));
}

double h6_F3_deformed(double z, PhasePoint a, PhasePoint b) {
  if (z == 0.0) return 0.0;
  const double x1 = a.x, x2 = b.x, y1 = a.y, y2 = b.y;
  auto E = [](double v) { return std::exp(v); };
  const double first = E(-z * (x1 + x2)) / (2 * z) *
                       (4 * E(z * x1) - 2 * E(2 * z * x1) + 4 * E(z * x2) - 2 * E(-2 * z * x2) +
                        E(2 * z * (x1 + x2)) - 2 * E(z * (x1 + x2)) - 3) *
                       (y1 * E(z * x2) + y2 * E(z * x1));
  const double second = y1 * y1 / (z * z) * E(-2 * z * x1) * (E(2 * z * x1) - 1) * (E(z * x2) - 1);
  const double third = y2 * y2 / (z * z) * (E(2 * z * x2) - 1) * (E(z * x1) - 1) * E(-2 * z * x2);
  const double poly = E(z * (2 * x1 + 3 * x2)) + E(z * (3 * x1 + 2 * x2)) - 2 * E(z * (x1 + 2 * x2)) -
                      2 * E(z * (2 * x1 + x2)) - 2 * E(2 * z * (x1 + x2)) + 4 * E(z * (x1 + x2)) -
                      2 * E(3 * z * x2) + 6 * E(2 * z * x2) - 5 * E(z * x2) - 2 * E(3 * z * x1) +
                      6 * E(2 * z * x1) - 5 * E(z * x1) + 2;
  const double fourth = y1 * y2 / (z * z) * E(-z * (x1 + x2)) * poly;
  return first - second - third + fourth;
}

}  // namespace lhd
