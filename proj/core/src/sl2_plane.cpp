#include "lhdeform/sl2_plane.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lhd {

namespace {

bool y_nonzero(PhasePoint p) { return p.y != 0.0 && std::isfinite(p.y) && std::isfinite(p.x); }
bool x_ne_y(PhasePoint p) { return p.x != p.y && std::isfinite(p.x) && std::isfinite(p.y); }

void require(const PlanarLHFamily& fam, PhasePoint p) {
  if (!fam.domain(p)) throw DomainError(fam.name + ": point outside domain");
}

PlanarLHFamily p2_family() {
  PlanarLHFamily f;
  f.name = "P2";
  f.casimir_c = 4;
  f.lambda = [](PhasePoint p) { return 1 / (p.y * p.y); };
  f.domain = y_nonzero;
  f.box = {-2, 2, 0.5, 2};
  f.fields = {
      [](PhasePoint) { return Vec2{1, 0}; },
      [](PhasePoint p) { return Vec2{p.x, p.y}; },
      [](PhasePoint p) { return Vec2{p.x * p.x - p.y * p.y, 2 * p.x * p.y}; },
  };
  f.hams = {
      {[](PhasePoint p) { return -1 / p.y; }, [](PhasePoint p) { return Vec2{0, 1 / (p.y * p.y)}; }},
      {[](PhasePoint p) { return -p.x / p.y; }, [](PhasePoint p) { return Vec2{-1 / p.y, p.x / (p.y * p.y)}; }},
      {[](PhasePoint p) { return -(p.x * p.x + p.y * p.y) / p.y; },
       [](PhasePoint p) { return Vec2{-2 * p.x / p.y, p.x * p.x / (p.y * p.y) - 1}; }},
  };
  f.bracket_table = sl2_relations(f.hams);
  return f;
}

PlanarLHFamily i4_family() {
  PlanarLHFamily f;
  f.name = "I4";
  f.casimir_c = -1;
  f.lambda = [](PhasePoint p) { return 1 / ((p.x - p.y) * (p.x - p.y)); };
  f.domain = x_ne_y;
  f.box = {1, 2, -1, 0};
  f.fields = {
      [](PhasePoint) { return Vec2{1, 1}; },
      [](PhasePoint p) { return Vec2{p.x, p.y}; },
      [](PhasePoint p) { return Vec2{p.x * p.x, p.y * p.y}; },
  };
  f.hams = {
      {[](PhasePoint p) { return 1 / (p.x - p.y); },
       [](PhasePoint p) {
         const double u = p.x - p.y;
         return Vec2{-1 / (u * u), 1 / (u * u)};
       }},
      {[](PhasePoint p) { return (p.x + p.y) / (2 * (p.x - p.y)); },
       [](PhasePoint p) {
         const double u = p.x - p.y;
         return Vec2{-p.y / (u * u), p.x / (u * u)};
       }},
      {[](PhasePoint p) { return p.x * p.y / (p.x - p.y); },
       [](PhasePoint p) {
         const double u = p.x - p.y;
         return Vec2{-p.y * p.y / (u * u), p.x * p.x / (u * u)};
       }},
  };
  f.bracket_table = sl2_relations(f.hams);
  return f;
}

PlanarLHFamily i5_family() {
  PlanarLHFamily f;
  f.name = "I5";
  f.casimir_c = 0;
  f.lambda = [](PhasePoint p) { return 1 / (p.y * p.y * p.y); };
  f.domain = y_nonzero;
  f.box = {-2, 2, 0.5, 2};
  f.fields = {
      [](PhasePoint) { return Vec2{1, 0}; },
      [](PhasePoint p) { return Vec2{p.x, p.y / 2}; },
      [](PhasePoint p) { return Vec2{p.x * p.x, p.x * p.y}; },
  };
  f.hams = {
      {[](PhasePoint p) { return -1 / (2 * p.y * p.y); },
       [](PhasePoint p) { return Vec2{0, 1 / (p.y * p.y * p.y)}; }},
      {[](PhasePoint p) { return -p.x / (2 * p.y * p.y); },
       [](PhasePoint p) { return Vec2{-1 / (2 * p.y * p.y), p.x / (p.y * p.y * p.y)}; }},
      {[](PhasePoint p) { return -p.x * p.x / (2 * p.y * p.y); },
       [](PhasePoint p) { return Vec2{-p.x / (p.y * p.y), p.x * p.x / (p.y * p.y * p.y)}; }},
  };
  f.bracket_table = sl2_relations(f.hams);
  return f;
}

DeformedTriple base_triple(const PlanarLHFamily& fam, double z) {
  DeformedTriple tr;
  tr.name = fam.name + "_table";
  tr.z = z;
  tr.casimir_c = fam.casimir_c;
  tr.lambda = fam.lambda;
  tr.domain = fam.domain;
  tr.box = fam.box;
  tr.h[0] = fam.hams[0];
  tr.X[0] = fam.fields[0];
  return tr;
}

DeformedTriple p2_table(double z) {
  DeformedTriple tr = base_triple(p2_family(), z);
  tr.h[1] = {[z](PhasePoint p) { return -(p.x / p.y) * sinhc(2 * z / p.y); },
             [z](PhasePoint p) {
               const double a = 2 * z / p.y, s = sinhc(a), sy = sinhc_prime(a) * (-2 * z / (p.y * p.y));
               return Vec2{-s / p.y, p.x * s / (p.y * p.y) - p.x / p.y * sy};
             }};
  tr.h[2] = {[z](PhasePoint p) {
               const double s = sinhc(2 * z / p.y);
               return -(p.x * p.x * s * s + p.y * p.y) / (p.y * s);
             },
             [z](PhasePoint p) {
               const double a = 2 * z / p.y, s = sinhc(a), sy = sinhc_prime(a) * (-2 * z / (p.y * p.y));
               const double x2 = p.x * p.x;
               return Vec2{-2 * p.x * s / p.y,
                           -x2 * (sy / p.y - s / (p.y * p.y)) - (1 / s - p.y * sy / (s * s))};
             }};
  tr.X[1] = [z](PhasePoint p) {
    const double a = 2 * z / p.y;
    return Vec2{p.x * std::cosh(a), p.y * sinhc(a)};
  };
  tr.X[2] = [z](PhasePoint p) {
    const double a = 2 * z / p.y, s = sinhc(a);
    return Vec2{(p.x * p.x - p.y * p.y / (s * s)) * std::cosh(a), 2 * p.x * p.y * s};
  };
  return tr;
}

DeformedTriple i4_table(double z) {
  DeformedTriple tr = base_triple(i4_family(), z);
  tr.h[1] = {[z](PhasePoint p) {
               const double u = p.x - p.y;
               return (p.x + p.y) * sinhc(2 * z / u) / (2 * u);
             },
             [z](PhasePoint p) {
               const double u = p.x - p.y, w = p.x + p.y, a = 2 * z / u, s = sinhc(a);
               const double sx = sinhc_prime(a) * (-2 * z / (u * u));
               // d/dx and d/dy of w s / (2u); s_y = -s_x
               const double gx = (s + w * sx) / (2 * u) - w * s / (2 * u * u);
               const double gy = (s - w * sx) / (2 * u) + w * s / (2 * u * u);
               return Vec2{gx, gy};
             }};
  tr.h[2] = {[z](PhasePoint p) {
               const double u = p.x - p.y, w = p.x + p.y, s = sinhc(2 * z / u);
               return (w * w * s * s - u * u) / (4 * u * s);
             },
             [z](PhasePoint p) {
               const double u = p.x - p.y, w = p.x + p.y, a = 2 * z / u, s = sinhc(a);
               const double sx = sinhc_prime(a) * (-2 * z / (u * u));
               // w^2 s/(4u) - u/(4s)
               const double gx = (2 * w * s + w * w * sx) / (4 * u) - w * w * s / (4 * u * u) - 1 / (4 * s) +
                                 u * sx / (4 * s * s);
               const double gy = (2 * w * s - w * w * sx) / (4 * u) + w * w * s / (4 * u * u) + 1 / (4 * s) -
                                 u * sx / (4 * s * s);
               return Vec2{gx, gy};
             }};
  tr.X[1] = [z](PhasePoint p) {
    const double u = p.x - p.y, w = p.x + p.y, a = 2 * z / u;
    const double e = w / 2 * std::cosh(a), o = u / 2 * sinhc(a);
    return Vec2{e + o, e - o};
  };
  tr.X[2] = [z](PhasePoint p) {
    const double u = p.x - p.y, w = p.x + p.y, a = 2 * z / u, s = sinhc(a);
    const double e = std::cosh(a) / 4 * (w * w + u * u / (s * s)), o = (p.x * p.x - p.y * p.y) / 2 * s;
    return Vec2{e + o, e - o};
  };
  return tr;
}

DeformedTriple i5_table(double z) {
  DeformedTriple tr = base_triple(i5_family(), z);
  tr.h[1] = {[z](PhasePoint p) { return -p.x / (2 * p.y * p.y) * sinhc(z / (p.y * p.y)); },
             [z](PhasePoint p) {
               const double y2 = p.y * p.y, a = z / y2, s = sinhc(a);
               const double sy = sinhc_prime(a) * (-2 * z / (y2 * p.y));
               return Vec2{-s / (2 * y2), p.x * s / (y2 * p.y) - p.x / (2 * y2) * sy};
             }};
  tr.h[2] = {[z](PhasePoint p) { return -p.x * p.x / (2 * p.y * p.y) * sinhc(z / (p.y * p.y)); },
             [z](PhasePoint p) {
               const double y2 = p.y * p.y, a = z / y2, s = sinhc(a);
               const double sy = sinhc_prime(a) * (-2 * z / (y2 * p.y));
               return Vec2{-p.x * s / y2, p.x * p.x * s / (y2 * p.y) - p.x * p.x / (2 * y2) * sy};
             }};
  tr.X[1] = [z](PhasePoint p) {
    const double a = z / (p.y * p.y);
    return Vec2{p.x * std::cosh(a), p.y / 2 * sinhc(a)};
  };
  tr.X[2] = [z](PhasePoint p) {
    const double a = z / (p.y * p.y);
    return Vec2{p.x * p.x * std::cosh(a), p.x * p.y * sinhc(a)};
  };
  return tr;
}

}  // namespace

double class_casimir(Sl2Class cls) noexcept {
  switch (cls) {
    case Sl2Class::P2: return 4;
    case Sl2Class::I4: return -1;
    case Sl2Class::I5: return 0;
  }
  return 0;
}

std::string to_string(Sl2Class cls) {
  switch (cls) {
    case Sl2Class::P2: return "P2";
    case Sl2Class::I4: return "I4";
    case Sl2Class::I5: return "I5";
  }
  return "?";
}

Sl2Class parse_sl2_class(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (n == "P2") return Sl2Class::P2;
  if (n == "I4") return Sl2Class::I4;
  if (n == "I5") return Sl2Class::I5;
  throw std::invalid_argument("unknown sl(2) class: " + name);
}

PlanarLHFamily sl2_class_family(Sl2Class cls) {
  switch (cls) {
    case Sl2Class::P2: return p2_family();
    case Sl2Class::I4: return i4_family();
    case Sl2Class::I5: return i5_family();
  }
  throw std::invalid_argument("bad class");
}

PlanarLHFamily sl2_canonical_family(double c) {
  PlanarLHFamily f;
  f.name = "canonical";
  f.casimir_c = c;
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = [](PhasePoint p) { return p.x != 0.0 && std::isfinite(p.x) && std::isfinite(p.y); };
  f.box = {0.5, 2, -2, 2};
  f.fields = {
      [](PhasePoint) { return Vec2{0, -1}; },
      [](PhasePoint p) { return Vec2{-p.x, p.y}; },
      [c](PhasePoint p) { return Vec2{2 * p.x * p.y, c / (4 * p.x * p.x) - p.y * p.y}; },
  };
  f.hams = {
      {[](PhasePoint p) { return p.x; }, [](PhasePoint) { return Vec2{1, 0}; }},
      {[](PhasePoint p) { return -p.x * p.y; }, [](PhasePoint p) { return Vec2{-p.y, -p.x}; }},
      {[c](PhasePoint p) { return c / (4 * p.x) + p.x * p.y * p.y; },
       [c](PhasePoint p) { return Vec2{-c / (4 * p.x * p.x) + p.y * p.y, 2 * p.x * p.y}; }},
  };
  f.bracket_table = sl2_relations(f.hams);
  return f;
}

DeformedTriple table42_triple(Sl2Class cls, double z) {
  switch (cls) {
    case Sl2Class::P2: return p2_table(z);
    case Sl2Class::I4: return i4_table(z);
    case Sl2Class::I5: return i5_table(z);
  }
  throw std::invalid_argument("bad class");
}

double class_F2(Sl2Class cls, PhasePoint a, PhasePoint b) {
  const PlanarLHFamily fam = sl2_class_family(cls);
  require(fam, a);
  require(fam, b);
  switch (cls) {
    case Sl2Class::P2: {
      const double dx = a.x - b.x, sy = a.y + b.y;
      return (dx * dx + sy * sy) / (a.y * b.y);
    }
    case Sl2Class::I4: return -(b.x - a.y) * (a.x - b.y) / ((a.x - a.y) * (b.x - b.y));
    case Sl2Class::I5: {
      const double dx = a.x - b.x;
      return dx * dx / (4 * a.y * a.y * b.y * b.y);
    }
  }
  throw std::invalid_argument("bad class");
}

double class_F2_deformed(Sl2Class cls, double z, PhasePoint a, PhasePoint b) {
  const PlanarLHFamily fam = sl2_class_family(cls);
  require(fam, a);
  require(fam, b);
  switch (cls) {
    case Sl2Class::P2: {
      const double a1 = 2 * z / a.y, a2 = 2 * z / b.y, s1 = sinhc(a1), s2 = sinhc(a2), s12 = sinhc(a1 + a2);
      const double dx = a.x - b.x, sy = a.y + b.y, den = a.y * b.y;
      return (dx * dx / den * s1 * s2 + sy * sy / den * s12 * s12 / (s1 * s2)) * std::exp(a1) * std::exp(-a2);
    }
    case Sl2Class::I4: {
      const double u1 = a.x - a.y, u2 = b.x - b.y;
      const double a1 = 2 * z / u1, a2 = 2 * z / u2, s1 = sinhc(a1), s2 = sinhc(a2), s12 = sinhc(a1 + a2);
      const double d = a.x - b.x + a.y - b.y, e = a.x + b.x - a.y - b.y;
      const double first = d * d / (4 * u1 * u2) * s1 * s2 * std::exp(-a1) * std::exp(a2);
      const double second = e * s12 / (4 * u1 * u2) * (std::exp(a2) * u1 / s1 + std::exp(-a1) * u2 / s2);
      return first - second;
    }
    case Sl2Class::I5: {
      const double a1 = z / (a.y * a.y), a2 = z / (b.y * b.y), dx = a.x - b.x;
      return dx * dx / (4 * a.y * a.y * b.y * b.y) * sinhc(a1) * sinhc(a2) * std::exp(a1) * std::exp(-a2);
    }
  }
  throw std::invalid_argument("bad class");
}

}  // namespace lhd
