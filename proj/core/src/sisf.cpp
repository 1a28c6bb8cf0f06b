#include "lhdeform/sisf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lhd {

namespace {

bool finite_point(PhasePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool sl2_domain(PhasePoint p) {
  const double w = p.x * p.y;
  return finite_point(p) && p.y != 0.0 && std::abs(w * w - 1) > 1e-12;
}

void require_p(double p) {
  if (p == 0.0) throw SingularError("SISf: p = 0");
}

void require_sl2(PhasePoint p) {
  if (!sl2_domain(p)) throw SingularError("SISf: p = 0 or p^2 q^2 = 1");
}

ScalarField h1_field() {
  return {[](PhasePoint p) { return -p.x * p.y; }, [](PhasePoint p) { return Vec2{-p.y, -p.x}; }};
}

ScalarField h2_field() {
  return {[](PhasePoint p) {
            require_p(p.y);
            return 1 / p.y - p.x * p.x * p.y;
          },
          [](PhasePoint p) {
            require_p(p.y);
            return Vec2{-2 * p.x * p.y, -1 / (p.y * p.y) - p.x * p.x};
          }};
}

ScalarField h3_field(double c) {
  return {[c](PhasePoint p) {
            require_sl2(p);
            const double q = p.x, y = p.y;
            return y * (2 * y * y * q * q + c) / (2 * (1 - y * y * q * q));
          },
          [c](PhasePoint p) {
            require_sl2(p);
            const double q = p.x, y = p.y;
            const double N = 2 * y * y * y * q * q + c * y, D = 2 * (1 - y * y * q * q);
            const double Nq = 4 * y * y * y * q, Np = 6 * y * y * q * q + c;
            const double Dq = -4 * y * y * q, Dp = -4 * y * q * q;
            return Vec2{(Nq * D - N * Dq) / (D * D), (Np * D - N * Dp) / (D * D)};
          }};
}

Vec2 sisf_x1(PhasePoint p) { return {p.x, -p.y}; }

Vec2 sisf_x2(PhasePoint p) {
  require_p(p.y);
  return {-p.x * p.x - 1 / (p.y * p.y), 2 * p.x * p.y};
}

TimeCoefficient negated(TimeCoefficient a) {
  return TimeCoefficient::custom([a](double t) { return -a(t); });
}

double max_abs(std::array<double, 2> r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

}  // namespace

TimeField2 sisf_field(TimeCoefficient rho0) {
  return [rho0](double t, PhasePoint s) {
    require_p(s.y);
    const double r = rho0(t), q = s.x, p = s.y;
    return Vec2{q * r - q * q - 1 / (p * p), -p * r + 2 * p * q};
  };
}

double sisf_hamiltonian(double rho0, EpiState s) {
  require_p(s.p);
  return s.q * s.p * (rho0 - s.q) + 1 / s.p;
}

PlanarLHFamily sisf_family() {
  PlanarLHFamily f;
  f.name = "sisf";
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = [](PhasePoint p) { return finite_point(p) && p.y != 0.0; };
  f.box = {0.1, 0.9, 1, 4};
  f.fields = {sisf_x1, sisf_x2};
  const ScalarField h2 = h2_field();
  f.hams = {{[](PhasePoint p) { return p.x * p.y; }, [](PhasePoint p) { return Vec2{p.y, p.x}; }}, h2};
  f.bracket_table = {{0, 1, [h2](PhasePoint p) { return -h2(p); }, "{h1,h2}=-h2"}};
  return f;
}

EpiState sisf_closed_form(double rho, double C1, double C2, double t) {
  const double E = std::exp(rho * t), r2 = rho * rho;
  const double D = (C1 * C1 * r2 - 4) * E * E + 4 * C2 * r2 * (C1 * E + C2);
  const double Dp = 4 * r2 - C2;
  if (D == 0.0 || Dp == 0.0) throw SingularError("sisf_closed_form: vanishing denominator");
  const double N = rho * E * (C1 * r2 - 4) * E + 2 * C1 * C2 * r2;
  return {N / D, C1 + (C1 * C1 * r2 - 4) / Dp + C2 * std::exp(-rho * t)};
}

double sisf_closed_form_residual(double rho, double C1, double C2, double t) {
  const EpiState s = sisf_closed_form(rho, C1, C2, t);
  const double E = std::exp(rho * t), r2 = rho * rho;
  const double N = rho * (C1 * r2 - 4) * E * E + 2 * C1 * C2 * r2;
  const double D = (C1 * C1 * r2 - 4) * E * E + 4 * C2 * r2 * (C1 * E + C2);
  const double dN = 2 * r2 * (C1 * r2 - 4) * E * E;
  const double dD = 2 * rho * (C1 * C1 * r2 - 4) * E * E + 4 * C1 * C2 * r2 * rho * E;
  const double dq = (dN * D - N * dD) / (D * D);
  const double dp = -rho * C2 * std::exp(-rho * t);
  const Vec2 f = sisf_field(TimeCoefficient::constant(rho))(t, to_plane(s));
  return std::max(std::abs(dq - f[0]), std::abs(dp - f[1]));
}

std::array<double, 2> sisf_kkk(double K1, double k1, double k2) {
  const double den = (K1 + 1) * (K1 - 1);
  if (den == 0.0 || k2 == 0.0 || 2 * k2 * K1 + k1 == 0.0) throw SingularError("sisf_kkk: vanishing denominator");
  const double K2 = K1 * (4 * k2 * k2 * K1 * K1 + 4 * k1 * k2 * K1 + k1 * k1 - 4) / (2 * den * k2 * (2 * k2 * K1 + k1));
  const double K3 = K1 * (k2 * K1 * K1 + k1 * K1 + (k1 * k1 - 4) / (4 * k2)) / den;
  return {K2, K3};
}

std::optional<std::array<double, 2>> sisf_exact_constants(EpiState target, EpiState sol2) {
  if (sol2.q == 0.0) throw SingularError("sisf_exact_constants: q2 = 0");
  const double K1 = target.q / sol2.q, want2 = target.q * target.p, want3 = target.q * sol2.p;
  auto residual = [&](double a, double b) -> std::optional<std::array<double, 2>> {
    try {
      const auto K = sisf_kkk(K1, a, b);
      std::array<double, 2> r{K[0] - want2, K[1] - want3};
      if (!std::isfinite(r[0]) || !std::isfinite(r[1])) return std::nullopt;
      return r;
    } catch (const SingularError&) {
      return std::nullopt;
    }
  };
  const double scale = std::max({1.0, std::abs(want2), std::abs(want3)});
  std::optional<std::array<double, 2>> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      if (j == 0) continue;
      double a = i, b = j;
      for (int it = 0; it < 60; ++it) {
        const auto r = residual(a, b);
        if (!r) break;
        if (max_abs(*r) < 1e-13 * scale) break;
        const double ha = 1e-7 * std::max(1.0, std::abs(a)), hb = 1e-7 * std::max(1.0, std::abs(b));
        const auto ra = residual(a + ha, b), rb = residual(a, b + hb);
        if (!ra || !rb) break;
        const double J00 = ((*ra)[0] - (*r)[0]) / ha, J10 = ((*ra)[1] - (*r)[1]) / ha;
        const double J01 = ((*rb)[0] - (*r)[0]) / hb, J11 = ((*rb)[1] - (*r)[1]) / hb;
        const double det = J00 * J11 - J01 * J10;
        if (det == 0.0 || !std::isfinite(det)) break;
        a -= (J11 * (*r)[0] - J01 * (*r)[1]) / det;
        b -= (-J10 * (*r)[0] + J00 * (*r)[1]) / det;
      }
      const auto r = residual(a, b);
      if (r && max_abs(*r) < best_res) {
        best_res = max_abs(*r);
        best = std::array<double, 2>{a, b};
      }
    }
  }
  if (!best || best_res > 1e-9 * scale) return std::nullopt;
  return best;
}

EpiState sisf_superpose_exact(EpiState sol2, double k1, double k2, int branch) {
  const double q2 = sol2.q, p2 = sol2.p, w = p2 * q2;
  const double disc = 4 * k2 * k2 * w * w + k1 * k1 * k2 * w - 4 * k2 * k2 * k2 * w - 4 * k2 * w + 4 * k2 * k2;
  if (disc < 0) throw DomainError("sisf_superpose_exact: negative discriminant");
  const double den = 2 * k2 * (-w + k2);
  if (den == 0.0) throw SingularError("sisf_superpose_exact: p2 q2 = k2 or k2 = 0");
  const double sgn = branch >= 0 ? 1.0 : -1.0;
  const double q1 = -q2 * (k1 * k2 + sgn * std::sqrt(disc)) / den;
  const double pden = 2 * k2 * (2 * q1 * q1 * q1 * k2 + q1 * q1 * k1 * q2 - 2 * q1 * k2 * q2 * q2 - k1 * q2 * q2 * q2);
  if (pden == 0.0) throw SingularError("sisf_superpose_exact: vanishing denominator in p1");
  const double pnum = 4 * q1 * q1 * k2 * k2 + 4 * q1 * q2 * k1 * k2 + q2 * q2 * k1 * k1 - 4 * q2 * q2;
  return {q1, pnum / pden};
}

EpiState sisf_superpose_linear(EpiState sol2, double k1, double k2) {
  const double s = 1 + k1 + k2;
  if (s == 0.0) throw DomainError("sisf_superpose_linear: 1 + k1 + k2 = 0");
  const double w = sol2.q * sol2.p;
  if (!(w > 0)) throw DomainError("sisf_superpose_linear: q2 p2 must be positive");
  return {sol2.q * std::pow(w, -1 / s), std::pow(w, std::sqrt(2.0) / 2 * (k1 - k2) / s) / sol2.q};
}

double iso11_constant(PhasePoint a, PhasePoint b) { return (a.x - b.x) * (a.y - b.y); }

PhasePoint iso11_superpose(PhasePoint s2, PhasePoint s3, double k1, double k2, double k3, int branch) {
  if (s2.x == s3.x || s2.y == s3.y) throw DomainError("iso11_superpose: coincident particular solutions");
  const double B2 = k1 * k1 + k2 * k2 + k3 * k3 - 2 * (k1 * k2 + k1 * k3 + k2 * k3);
  if (B2 < 0) throw DomainError("iso11_superpose: B^2 < 0");
  const double B = (branch >= 0 ? 1.0 : -1.0) * std::sqrt(B2);
  return {(s2.x + s3.x) / 2 + (k2 - k1 + B) / (2 * (s2.y - s3.y)),
          (s2.y + s3.y) / 2 + (k2 - k1 - B) / (2 * (s2.x - s3.x))};
}

PhasePoint sisf_to_iso11(EpiState s) {
  const double w = s.q * s.p, d = 1 - w * w;
  if (s.p == 0.0 || d == 0.0) throw SingularError("sisf_to_iso11: p = 0 or p q = +-1");
  return {-s.q * s.p * s.p / d, d / s.p};
}

EpiState iso11_to_sisf(PhasePoint xy) {
  if (xy.y == 0.0) throw SingularError("iso11_to_sisf: y = 0");
  const double w = -xy.x * xy.y, d = 1 - w * w;
  if (d == 0.0) throw SingularError("iso11_to_sisf: x y = +-1");
  return {w * xy.y / d, d / xy.y};
}

PhasePoint sisf_to_iso11_printed(EpiState s) {
  if (s.q == 0.0 || s.p == 0.0) throw SingularError("sisf_to_iso11_printed: q p = 0");
  return {-s.q * s.p, s.q - 1 / (s.q * s.p * s.p)};
}

EpiState sisf_superpose_iso11(EpiState s2, EpiState s3, double k1, double k2, double k3, int branch, double k3_tol) {
  const PhasePoint a = sisf_to_iso11(s2), b = sisf_to_iso11(s3);
  if (k3_tol > 0) {
    const double want = iso11_constant(b, a);
    if (std::abs(want - k3) > k3_tol * std::max(1.0, std::abs(want)))
      throw DomainError("sisf_superpose_iso11: k3 inconsistent with the particular solutions");
  }
  return iso11_to_sisf(iso11_superpose(a, b, k1, k2, k3, branch));
}

PlanarLHFamily sisf_sl2_triple(double c) {
  PlanarLHFamily f;
  f.name = "sisf_sl2";
  f.casimir_c = c;
  f.lambda = [](PhasePoint) { return 1.0; };
  f.domain = sl2_domain;
  f.box = {0.05, 0.25, 1, 3};
  f.hams = {h1_field(), h2_field(), h3_field(c)};
  for (const auto& h : f.hams) f.fields.push_back(hamiltonian_field(h, f.lambda));
  const auto H = f.hams;
  f.bracket_table = {
      {0, 1, [H](PhasePoint p) { return H[1](p); }, "{h1,h2}=h2"},
      {0, 2, [H](PhasePoint p) { return -H[2](p); }, "{h1,h3}=-h3"},
      {1, 2, [H](PhasePoint p) { return -2 * H[0](p); }, "{h2,h3}=-2h1"},
  };
  return f;
}

std::vector<Relation> sisf_sl2_printed_relations(const PlanarLHFamily& fam) {
  const auto H = fam.hams;
  return {
      {0, 1, [H](PhasePoint p) { return H[1](p); }, "{h1,h2}=h2"},
      {0, 2, [H](PhasePoint p) { return -H[2](p); }, "{h1,h3}=-h3"},
      {1, 2, [H](PhasePoint p) { return 2 * H[0](p); }, "{h2,h3}=2h1"},
  };
}

DeformedTriple sisf_deformed_triple(double z, double c) {
  const PlanarLHFamily base = sisf_sl2_triple(c);
  PlanarLHFamily std_order = base;
  std_order.hams = {base.hams[1], base.hams[0], base.hams[2]};
  std_order.fields = {base.fields[1], base.fields[0], base.fields[2]};
  std_order.casimir_c = 2 * c;
  const DeformedTriple d = mt_deform(std_order, z);
  DeformedTriple tr = d;
  tr.name = "sisf_deformed";
  tr.h = {d.h[1], d.h[0], d.h[2]};
  tr.X = {d.X[1], d.X[0], d.X[2]};
  tr.roles = {1, 0, 2};
  return tr;
}

SisfDeformed sisf_deformed(const SisfParams& params) {
  SisfDeformed out;
  out.triple = sisf_deformed_triple(params.z, params.c);
  const auto& tr = out.triple;
  const TimeCoefficient rho = params.rho0;
  out.field = t_dependent_field({tr.X[0], tr.X[1]}, {negated(rho), TimeCoefficient::constant(1)});
  out.hamiltonian = [h = tr.h, rho](double t, PhasePoint p) { return -rho(t) * h[0](p) + h[1](p); };
  return out;
}

std::vector<Relation> sisf_gb22_relations(const DeformedTriple& tr) {
  const auto H = tr.h;
  const double z = tr.z;
  return {
      {0, 1, [H, z](PhasePoint p) { return sinhc(2 * z * H[1](p)) * H[1](p); }, "{hz1,hz2}=shc(2z hz2) hz2"},
      {1, 2, [H](PhasePoint p) { return 2 * H[0](p); }, "{hz2,hz3}=2hz1"},
      {0, 2, [H, z](PhasePoint p) { return -std::cosh(2 * z * H[1](p)) * H[2](p); }, "{hz1,hz3}=-cosh(2z hz2) hz3"},
  };
}

TimeField2 sisf_dssis_verbatim(double z, TimeCoefficient rho0) {
  return [z, rho0](double t, PhasePoint s) {
    require_sl2(s);
    const double q = s.x, p = s.y, w2 = p * p * q * q, r = rho0(t);
    const double a = 2 * z * (1 / p - q * q * p), ch = std::cosh(a), sh = sinhc(a);
    const double m = w2 - 1;
    const double dq = (ch / (m * m) * (1 - w2 * w2) + sh / m * q) * r - q * q - 1 / (p * p);
    const double dp = (ch / (m * m) * (2 * std::pow(p, 5) * std::pow(q, 4) - p * p * p * q * q) - p * sh / m * (w2 + 1)) * r -
                      2 * q * p;
    return Vec2{dq, dp};
  };
}

OdeField sisf_coupled_field(const SisfParams& params, int ncopies) {
  return coupled_copy_field(sisf_deformed_triple(params.z, params.c),
                            {negated(params.rho0), TimeCoefficient::constant(1), TimeCoefficient::constant(0)}, ncopies);
}

double sisf_deformed_constant(double z, double c, EpiState a, EpiState b) {
  require_sl2(to_plane(a));
  require_sl2(to_plane(b));
  const DeformedTriple tr = sisf_deformed_triple(z, c);
  return casimir_F(tr, two_copy_values(tr, to_plane(a), to_plane(b)));
}

SisfConstants sisf_deformed_constants(double z, double c, EpiState p1, EpiState p2, EpiState p3) {
  return {sisf_deformed_constant(z, c, p1, p2), sisf_deformed_constant(z, c, p1, p3)};
}

}  // namespace lhd
