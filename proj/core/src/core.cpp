#include "lhdeform/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lhd {

TimeCoefficient TimeCoefficient::constant(double a) { return TimeCoefficient(Constant{a}); }

TimeCoefficient TimeCoefficient::sinusoid(double a, double b, double omega, double phi) {
  return TimeCoefficient(Sinusoid{a, b, omega, phi});
}

TimeCoefficient TimeCoefficient::polynomial(std::vector<double> coeffs) {
  return TimeCoefficient(Polynomial{std::move(coeffs)});
}

TimeCoefficient TimeCoefficient::tabulated(std::vector<double> knots, std::vector<double> values) {
  if (knots.empty() || knots.size() != values.size())
    throw std::invalid_argument("tabulated coefficient needs matching, non-empty knots and values");
  if (!std::is_sorted(knots.begin(), knots.end()))
    throw std::invalid_argument("tabulated knots must be increasing");
  return TimeCoefficient(Tabulated{std::move(knots), std::move(values)});
}

TimeCoefficient TimeCoefficient::custom(std::function<double(double)> fn) {
  return TimeCoefficient(Custom{std::move(fn)});
}

TimeCoefficient TimeCoefficient::squared(TimeCoefficient base) {
  return custom([b = std::move(base)](double t) {
    const double v = b(t);
    return v * v;
  });
}

double TimeCoefficient::operator()(double t) const {
  struct Eval {
    double t;
    double operator()(const Constant& c) const { return c.a; }
    double operator()(const Sinusoid& s) const { return s.a + s.b * std::sin(s.omega * t + s.phi); }
    double operator()(const Polynomial& p) const {
      double acc = 0;
      for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    double operator()(const Tabulated& tb) const {
      const auto& k = tb.knots;
      if (t <= k.front()) return tb.values.front();
      if (t >= k.back()) return tb.values.back();
      const auto hi = static_cast<std::size_t>(std::upper_bound(k.begin(), k.end(), t) - k.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - k[lo]) / (k[hi] - k[lo]);
      return (1 - w) * tb.values[lo] + w * tb.values[hi];
    }
    double operator()(const Custom& c) const { return c.fn(t); }
  };
  return std::visit(Eval{t}, kind_);
}

VectorField2 hamiltonian_field(ScalarField h, Density lambda) {
  return [h = std::move(h), lambda = std::move(lambda)](PhasePoint p) -> Vec2 {
    const double l = lambda(p);
    if (l == 0.0 || !std::isfinite(l)) throw SingularError("symplectic density vanishes");
    const Vec2 g = h.grad(p);
    return {g[1] / l, -g[0] / l};
  };
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const Density& lambda, PhasePoint p) {
  const double l = lambda(p);
  if (l == 0.0 || !std::isfinite(l)) throw SingularError("symplectic density vanishes");
  const Vec2 df = f.grad(p), dg = g.grad(p);
  return (dg[1] * df[0] - dg[0] * df[1]) / l;
}

namespace {

// Columns of the Jacobian of X at p: d/dx and d/dy.
std::array<Vec2, 2> jacobian5(const VectorField2& X, PhasePoint p, double step) {
  const double hx = step > 0 ? step : 1e-3 * std::max(1.0, std::abs(p.x));
  const double hy = step > 0 ? step : 1e-3 * std::max(1.0, std::abs(p.y));
  auto d = [&](double dx, double dy, double h) {
    const Vec2 a = X({p.x + 2 * dx, p.y + 2 * dy}), b = X({p.x + dx, p.y + dy});
    const Vec2 c = X({p.x - dx, p.y - dy}), e = X({p.x - 2 * dx, p.y - 2 * dy});
    return Vec2{(-a[0] + 8 * b[0] - 8 * c[0] + e[0]) / (12 * h), (-a[1] + 8 * b[1] - 8 * c[1] + e[1]) / (12 * h)};
  };
  return {d(hx, 0, hx), d(0, hy, hy)};
}

}  // namespace

Vec2 lie_bracket(const VectorField2& X, const VectorField2& Y, PhasePoint p, double step) {
  const Vec2 xv = X(p), yv = Y(p);
  const auto jx = jacobian5(X, p, step), jy = jacobian5(Y, p, step);
  Vec2 out{};
  for (int i = 0; i < 2; ++i)
    out[i] = jy[0][i] * xv[0] + jy[1][i] * xv[1] - (jx[0][i] * yv[0] + jx[1][i] * yv[1]);
  return out;
}

DeformedTriple mt_deform(const PlanarLHFamily& fam, double z) {
  if (fam.hams.size() != 3 || fam.fields.size() != 3)
    throw std::invalid_argument("mt_deform needs a three-generator family");
  const ScalarField h1 = fam.hams[0], h2 = fam.hams[1], h3 = fam.hams[2];
  const VectorField2 X1 = fam.fields[0], X2 = fam.fields[1];
  const double c = fam.casimir_c;
  auto check = [](double v) {
    if (v == 0.0) throw SingularError("h1 vanishes: realization is singular");
    return v;
  };

  DeformedTriple tr;
  tr.name = fam.name + "_deformed";
  tr.z = z;
  tr.casimir_c = c;
  tr.lambda = fam.lambda;
  tr.domain = fam.domain;
  tr.box = fam.box;
  tr.h[0] = h1;
  tr.h[1] = ScalarField{[=](PhasePoint p) { return sinhc(2 * z * h1(p)) * h2(p); },
                        [=](PhasePoint p) {
                          const double a = 2 * z * h1(p), s = sinhc(a), sp = sinhc_prime(a) * 2 * z;
                          const Vec2 g1 = h1.grad(p), g2 = h2.grad(p);
                          const double v2 = h2(p);
                          return Vec2{sp * g1[0] * v2 + s * g2[0], sp * g1[1] * v2 + s * g2[1]};
                        }};
  tr.h[2] = ScalarField{[=](PhasePoint p) {
                          const double v1 = check(h1(p)), v2 = h2(p), s = sinhc(2 * z * v1);
                          return s * v2 * v2 / v1 + c / (4 * s * v1);
                        },
                        [=](PhasePoint p) {
                          const double v1 = check(h1(p)), v2 = h2(p);
                          const double a = 2 * z * v1, s = sinhc(a), sp = sinhc_prime(a) * 2 * z;
                          const Vec2 g1 = h1.grad(p), g2 = h2.grad(p);
                          Vec2 out{};
                          for (int i = 0; i < 2; ++i) {
                            const double ds = sp * g1[i];
                            const double t1 = ds * v2 * v2 / v1 + s * (2 * v2 * g2[i] / v1 - v2 * v2 * g1[i] / (v1 * v1));
                            const double den = s * v1;
                            const double t2 = -c / 4 * (ds * v1 + s * g1[i]) / (den * den);
                            out[i] = t1 + t2;
                          }
                          return out;
                        }};
  tr.X[0] = X1;
  tr.X[1] = [=](PhasePoint p) {
    const double v1 = check(h1(p)), v2 = h2(p), a = 2 * z * v1, s = sinhc(a), ch = std::cosh(a);
    const Vec2 a1 = X1(p), a2 = X2(p);
    const double k1 = v2 / v1 * (ch - s);
    return Vec2{k1 * a1[0] + s * a2[0], k1 * a1[1] + s * a2[1]};
  };
  tr.X[2] = [=](PhasePoint p) {
    const double v1 = check(h1(p)), v2 = h2(p), a = 2 * z * v1, s = sinhc(a), ch = std::cosh(a);
    const Vec2 a1 = X1(p), a2 = X2(p);
    const double k1 = v2 * v2 / (v1 * v1) * (ch - 2 * s) - c * ch / (4 * v1 * v1 * s * s);
    const double k2 = 2 * v2 / v1 * s;
    return Vec2{k1 * a1[0] + k2 * a2[0], k1 * a1[1] + k2 * a2[1]};
  };
  return tr;
}

TimeField2 t_dependent_field(std::vector<VectorField2> fields, std::vector<TimeCoefficient> coeffs) {
  if (fields.size() != coeffs.size()) throw std::invalid_argument("fields and coefficients differ in length");
  return [fields = std::move(fields), coeffs = std::move(coeffs)](double t, PhasePoint p) {
    Vec2 out{0, 0};
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double b = coeffs[i](t);
      if (b == 0.0) continue;
      const Vec2 v = fields[i](p);
      out[0] += b * v[0];
      out[1] += b * v[1];
    }
    return out;
  };
}

CopyValues n_copy_values(const DeformedTriple& tr, std::span<const PhasePoint> pts, bool with_grad) {
  const std::size_t n = pts.size();
  if (n == 0) throw std::invalid_argument("n_copy_values needs at least one copy");
  const int piv = tr.pivot();
  for (const auto& p : pts)
    if (tr.domain && !tr.domain(p)) throw DomainError(tr.name + ": copy outside domain");

  std::vector<std::array<double, 3>> h(n);
  std::vector<std::array<Vec2, 3>> g(with_grad ? n : 0);
  for (std::size_t m = 0; m < n; ++m)
    for (int k = 0; k < 3; ++k) {
      h[m][k] = tr.h[k](pts[m]);
      if (with_grad) g[m][k] = tr.h[k].grad(pts[m]);
    }
  // prefix[i] = sum_{j<i} h_piv(p_j)
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + h[i][piv];
  const double total = prefix[n];
  const double z = tr.z;

  CopyValues out;
  if (with_grad) out.grad.assign(n, std::array<Vec2, 3>{});
  for (int k = 0; k < 3; ++k) {
    if (k == piv) {
      out.v[k] = total;
      if (with_grad)
        for (std::size_t m = 0; m < n; ++m) out.grad[m][k] = g[m][piv];
      continue;
    }
    std::vector<double> term(n);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double after = total - prefix[i + 1];
      term[i] = std::exp(-2 * z * prefix[i]) * h[i][k] * std::exp(2 * z * after);
      acc += term[i];
    }
    out.v[k] = acc;
    if (!with_grad) continue;
    for (std::size_t m = 0; m < n; ++m) {
      const double w = std::exp(-2 * z * prefix[m]) * std::exp(2 * z * (total - prefix[m + 1]));
      double before = 0, later = 0;  // terms with i < m and i > m
      for (std::size_t i = 0; i < m; ++i) before += term[i];
      for (std::size_t i = m + 1; i < n; ++i) later += term[i];
      const double coef = 2 * z * (before - later);
      out.grad[m][k] = {w * g[m][k][0] + coef * g[m][piv][0], w * g[m][k][1] + coef * g[m][piv][1]};
    }
  }
  return out;
}

std::array<double, 3> two_copy_values(const DeformedTriple& tr, PhasePoint p1, PhasePoint p2) {
  const std::array<PhasePoint, 2> pts{p1, p2};
  return n_copy_values(tr, pts).v;
}

double casimir_F(const std::array<double, 3>& a, double z) { return sinhc(2 * z * a[0]) * a[0] * a[2] - a[1] * a[1]; }

double casimir_F(const DeformedTriple& tr, const std::array<double, 3>& v) {
  return casimir_F({v[tr.roles[0]], v[tr.roles[1]], v[tr.roles[2]]}, tr.z);
}

OdeField coupled_copy_field(const DeformedTriple& tr, std::array<TimeCoefficient, 3> b, int ncopies) {
  if (ncopies < 1) throw std::invalid_argument("ncopies must be positive");
  return [tr, b = std::move(b), ncopies](double t, const State& s) {
    std::vector<PhasePoint> pts(ncopies);
    for (int m = 0; m < ncopies; ++m) pts[m] = point_of(s, m);
    const CopyValues cv = n_copy_values(tr, pts, true);
    const std::array<double, 3> bt{b[0](t), b[1](t), b[2](t)};
    State out(2 * ncopies);
    for (int m = 0; m < ncopies; ++m) {
      double gx = 0, gy = 0;
      for (int k = 0; k < 3; ++k) {
        gx += bt[k] * cv.grad[m][k][0];
        gy += bt[k] * cv.grad[m][k][1];
      }
      const double l = tr.lambda(pts[m]);
      if (l == 0.0) throw SingularError("symplectic density vanishes");
      out[2 * m] = gy / l;
      out[2 * m + 1] = -gx / l;
    }
    return out;
  };
}

StatePredicate copies_domain(DomainPredicate dom, int ncopies) {
  return [dom = std::move(dom), ncopies](const State& s) {
    if (!dom) return true;
    for (int m = 0; m < ncopies; ++m)
      if (!dom(point_of(s, m))) return false;
    return true;
  };
}

OdeField plane_ode(TimeField2 f) {
  return [f = std::move(f)](double t, const State& s) {
    const Vec2 v = f(t, {s[0], s[1]});
    return State{v[0], v[1]};
  };
}

OdeField plane_ode_copies(TimeField2 f, int ncopies) {
  return [f = std::move(f), ncopies](double t, const State& s) {
    State out(2 * ncopies);
    for (int m = 0; m < ncopies; ++m) {
      const Vec2 v = f(t, point_of(s, m));
      out[2 * m] = v[0];
      out[2 * m + 1] = v[1];
    }
    return out;
  };
}

std::vector<Relation> sl2_relations(const std::vector<ScalarField>& hams) {
  if (hams.size() < 3) throw std::invalid_argument("sl2_relations needs three Hamiltonians");
  const ScalarField h1 = hams[0], h2 = hams[1], h3 = hams[2];
  return {
      {0, 1, [=](PhasePoint p) { return -h1(p); }, "{h1,h2}=-h1"},
      {0, 2, [=](PhasePoint p) { return -2 * h2(p); }, "{h1,h3}=-2h2"},
      {1, 2, [=](PhasePoint p) { return -h3(p); }, "{h2,h3}=-h3"},
  };
}

std::vector<Relation> deformed_sl2_relations(const DeformedTriple& tr) {
  const int a = tr.roles[0], b = tr.roles[1], c = tr.roles[2];
  const ScalarField ha = tr.h[a], hb = tr.h[b], hc = tr.h[c];
  const double z = tr.z;
  return {
      {a, b, [=](PhasePoint p) { return -sinhc(2 * z * ha(p)) * ha(p); }, "{a,b}=-sinhc(2z a) a"},
      {a, c, [=](PhasePoint p) { return -2 * hb(p); }, "{a,c}=-2b"},
      {b, c, [=](PhasePoint p) { return -std::cosh(2 * z * ha(p)) * hc(p); }, "{b,c}=-cosh(2z a) c"},
  };
}

}  // namespace lhd
