#include "lhdeform/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lhd {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite input");
}

bool all_finite(const State& s) {
  return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

void axpy(State& out, const State& a, double h, const State& k) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + h * k[i];
}

}  // namespace

double sinhc(double x) {
  require_finite(x, "sinhc");
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double sinhc_prime(double x) {
  require_finite(x, "sinhc_prime");
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x / 3.0 + x * x2 / 30.0 + x * x2 * x2 / 840.0;
  }
  return (std::cosh(x) - std::sinh(x) / x) / x;
}

double expm1_ratio(double z, double x) {
  require_finite(z, "expm1_ratio");
  require_finite(x, "expm1_ratio");
  if (z == 0.0) return x;
  return -std::expm1(-z * x) / z;
}

std::array<double, 2> central_gradient(const PlaneFn& f, double x, double y, double step) {
  const double e3 = std::cbrt(std::numeric_limits<double>::epsilon());
  const double hx = step > 0 ? step : e3 * std::max(1.0, std::abs(x));
  const double hy = step > 0 ? step : e3 * std::max(1.0, std::abs(y));
  const double gx = (f(x + hx, y) - f(x - hx, y)) / (2 * hx);
  const double gy = (f(x, y + hy) - f(x, y - hy)) / (2 * hy);
  return {gx, gy};
}

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

Trajectory integrate_fixed_rk4(const OdeField& f, double t0, double t1, const State& s0, double dt,
                               const StatePredicate& domain) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (domain && !domain(s0)) throw DomainError("initial state outside domain");
  Trajectory tr;
  tr.t.push_back(t0);
  tr.y.push_back(s0);
  const std::size_t n = s0.size();
  State s = s0, k1, k2, k3, k4, tmp(n);
  double t = t0;
  while (t < t1) {
    const double h = std::min(dt, t1 - t);
    k1 = f(t, s);
    axpy(tmp, s, h / 2, k1);
    k2 = f(t + h / 2, tmp);
    axpy(tmp, s, h / 2, k2);
    k3 = f(t + h / 2, tmp);
    axpy(tmp, s, h, k3);
    k4 = f(t + h, tmp);
    State next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    const double tn = (t1 - t <= dt) ? t1 : t + h;
    if (!all_finite(next) || (domain && !domain(next)))
      throw IntegrationError("state left the domain", t, s);
    s = std::move(next);
    t = tn;
    tr.t.push_back(t);
    tr.y.push_back(s);
    ++tr.accepted_steps;
  }
  return tr;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Trajectory integrate_adaptive(const OdeField& f, double t0, double t1, const State& s0,
                              const IntegratorConfig& cfg, const StatePredicate& domain) {
  cfg.validate();
  if (t1 < t0) throw std::invalid_argument("t1 must not precede t0");
  if (domain && !domain(s0)) throw DomainError("initial state outside domain");
  Trajectory tr;
  tr.t.push_back(t0);
  tr.y.push_back(s0);
  if (t1 == t0) return tr;

  const std::size_t n = s0.size();
  State s = s0, tmp(n), ynew(n);
  double t = t0;
  State k1 = f(t, s), k2, k3, k4, k5, k6, k7;

  auto err_norm = [&](const State& a, const State& b, const State& err) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      acc = std::max(acc, std::abs(err[i]) / sc);
    }
    return acc;
  };

  double h = cfg.initial_step;
  if (!(h > 0)) {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(s[i]);
      d0 = std::max(d0, std::abs(s[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t1 - t0);
  }
  if (cfg.max_step > 0) h = std::min(h, cfg.max_step);

  std::size_t steps = 0;
  State err(n);
  while (t < t1) {
    if (++steps > cfg.max_steps) throw IntegrationError("max_steps exceeded", t, s);
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h <= std::abs(t) * 1e-15 || h <= 0) throw IntegrationError("step size underflow", t, s);

    bool finite = true, inside = true;
    double en = std::numeric_limits<double>::infinity();
    try {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + h * a21 * k1[i];
      k2 = f(t + c2 * h, tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + h * (a31 * k1[i] + a32 * k2[i]);
      k3 = f(t + c3 * h, tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      k4 = f(t + c4 * h, tmp);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = s[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      k5 = f(t + c5 * h, tmp);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = s[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      k6 = f(t + h, tmp);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = s[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      finite = all_finite(ynew);
      inside = finite && (!domain || domain(ynew));
      if (inside) {
        k7 = f(t + h, ynew);
        for (std::size_t i = 0; i < n; ++i)
          err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        en = err_norm(s, ynew, err);
        if (!std::isfinite(en)) en = std::numeric_limits<double>::infinity();
      }
    } catch (const DomainError&) {
      inside = false;
    }
    if (en <= 1.0) {
      t = last ? t1 : t + h;
      s = ynew;
      k1 = k7;
      tr.t.push_back(t);
      tr.y.push_back(s);
      ++tr.accepted_steps;
      const double fac = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++tr.rejected_steps;
      if (!inside && h < 1e-12 * std::max(1.0, std::abs(t)))
        throw IntegrationError(finite ? "state left the domain" : "non-finite state", t, s);
      const double fac = std::isfinite(en) ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0) : 0.2;
      h *= fac;
    }
    if (cfg.max_step > 0) h = std::min(h, cfg.max_step);
  }
  return tr;
}

double quad_chebyshev_weight(const std::function<double(double)>& f, std::size_t n_nodes) {
  if (n_nodes == 0) throw std::invalid_argument("n_nodes must be positive");
  const double pi = std::acos(-1.0);
  const double h = pi / static_cast<double>(n_nodes);
  double acc = 0;
  for (std::size_t k = 0; k < n_nodes; ++k) acc += f(std::cos((static_cast<double>(k) + 0.5) * h));
  return acc * h;
}

std::vector<State> integrate_at(const OdeField& f, const std::vector<double>& times, const State& s0,
                                const IntegratorConfig& cfg, const StatePredicate& domain) {
  std::vector<State> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  out.push_back(s0);
  for (std::size_t i = 1; i < times.size(); ++i)
    out.push_back(integrate_adaptive(f, times[i - 1], times[i], out.back(), cfg, domain).back());
  return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {a};
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  out[n] = b;
  return out;
}

}  // namespace lhd
