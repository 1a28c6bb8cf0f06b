#include "lhdeform/noether_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lhd {

namespace {

double acos_checked(double x) {
  if (!(std::abs(x) <= 1)) throw DomainError("Chebyshev functions need |x| <= 1");
  return std::acos(x);
}

void require_g(double g) {
  if (g == 0.0 || !std::isfinite(g)) throw SingularError("g vanishes or is not finite");
}

void require_open_interval(double x) {
  if (!(std::abs(x) < 1)) throw DomainError("Chebyshev preset needs |x| < 1");
}

// y'' for the linear equation given y, y'.
double ge3_accel(const GTriple& gt, double x, double y, double yp) {
  const double g = gt.g(x);
  require_g(g);
  return gt.dg(x) / (2 * g) * yp - g * y;
}

}  // namespace

double chebyshev_T(int n, double x) { return std::cos(n * acos_checked(x)); }
double chebyshev_U(int n, double x) { return std::sin(n * acos_checked(x)); }

double chebyshev_orthogonality(int n, int m, ChebyshevKind kind) {
  if (n < 0 || m < 0) throw std::invalid_argument("chebyshev_orthogonality: negative degree");
  const auto nodes = static_cast<std::size_t>(std::max(64, 4 * (n + m) + 8));
  if (kind == ChebyshevKind::T)
    return quad_chebyshev_weight([=](double x) { return chebyshev_T(n, x) * chebyshev_T(m, x); }, nodes);
  return quad_chebyshev_weight([=](double x) { return chebyshev_U(n, x) * chebyshev_U(m, x); }, nodes);
}

GTriple gtriple_constant() {
  return {"g=1",
          [](double) { return 1.0; },
          [](double) { return 0.0; },
          [](double x) { return std::sin(x); },
          [](double x) { return std::cos(x); },
          [](double x) { return std::cos(x); },
          [](double x) { return -std::sin(x); }};
}

GTriple gtriple_linear() {
  auto H = [](double x) {
    if (!(x > 0)) throw DomainError("g = x preset needs x > 0");
    return 2.0 / 3.0 * x * std::sqrt(x);
  };
  return {"g=x",
          [](double x) { return x; },
          [](double) { return 1.0; },
          [H](double x) { return std::sin(H(x)); },
          [H](double x) { return std::sqrt(x) * std::cos(H(x)); },
          [H](double x) { return std::cos(H(x)); },
          [H](double x) { return -std::sqrt(x) * std::sin(H(x)); }};
}

GTriple gtriple_chebyshev(int n) {
  if (n <= 0) throw std::invalid_argument("gtriple_chebyshev: n must be positive");
  const double nn = n;
  return {"g=n^2/(1-x^2)",
          [nn](double x) {
            require_open_interval(x);
            return nn * nn / (1 - x * x);
          },
          [nn](double x) {
            require_open_interval(x);
            return 2 * nn * nn * x / ((1 - x * x) * (1 - x * x));
          },
          [n](double x) { return chebyshev_U(n, x); },
          [n, nn](double x) {
            require_open_interval(x);
            return -nn * std::cos(n * std::acos(x)) / std::sqrt(1 - x * x);
          },
          [n](double x) { return chebyshev_T(n, x); },
          [n, nn](double x) {
            require_open_interval(x);
            return nn * std::sin(n * std::acos(x)) / std::sqrt(1 - x * x);
          }};
}

double wronskian(const GTriple& gt, double x) { return gt.T(x) * gt.dU(x) - gt.dT(x) * gt.U(x); }

std::array<double, 2> ge3_residual(const GTriple& gt, double x) {
  const double h = 1e-4 * std::max(1.0, std::abs(x));
  auto second = [&](const RealFn& d) { return (-d(x + 2 * h) + 8 * d(x + h) - 8 * d(x - h) + d(x - 2 * h)) / (12 * h); };
  return {second(gt.dT) - ge3_accel(gt, x, gt.T(x), gt.dT(x)), second(gt.dU) - ge3_accel(gt, x, gt.U(x), gt.dU(x))};
}

void validate_gtriple(const GTriple& gt, const std::vector<double>& xs, double tol) {
  for (double x : xs) {
    const auto r = ge3_residual(gt, x);
    const double scale = std::max(1.0, std::abs(gt.g(x)));
    if (std::abs(r[0]) > tol * scale || std::abs(r[1]) > tol * scale)
      throw DomainError("GTriple " + gt.name + ": T or U does not solve the linear equation");
    if (wronskian(gt, x) == 0.0) throw DomainError("GTriple " + gt.name + ": vanishing Wronskian");
  }
}

OdeField ge3_field(const GTriple& gt) {
  return [gt](double x, const State& s) { return State{s[1], ge3_accel(gt, x, s[0], s[1])}; };
}

OdeField deformed_ge3_field(const GTriple& gt, double alpha) {
  return [gt, alpha](double x, const State& s) {
    const double y = s[0];
    double acc = ge3_accel(gt, x, y, s[1]);
    if (alpha != 0.0) {
      if (y == 0.0) throw SingularError("deformed equation: y = 0");
      acc += 2 * alpha * gt.g(x) / (y * y * y);
    }
    return State{s[1], acc};
  };
}

PsiValues psi_invariants(const GTriple& gt, double alpha, double x, double y, double yp) {
  const double g = gt.g(x);
  require_g(g);
  if (y == 0.0) throw SingularError("psi_invariants: y = 0");
  const double W = wronskian(gt, x), sg = std::sqrt(g), t = gt.T(x), tp = gt.dT(x);
  const double y2 = y * y, yp2 = yp * yp;
  PsiValues v;
  v.psi0 = W / sg * (yp2 / (2 * g) + y2 / 2 + alpha / y2);
  v.psi0_verbatim = W / sg * (yp2 / g + y2 / 2 - alpha / y2);
  const double tail = y * yp * (4 * g * t * t - 3 * g + 2 * tp * tp);
  v.psi3 = -(t * tp * (yp2 + g * (2 * alpha / y2 - y2)) + tail) / (g * sg);
  v.psi3_verbatim = -(t * tp * (yp2 + g * (y2 + 2 * alpha / y2)) + tail) / (g * sg);
  return v;
}

OdeField coupled_deformed_field(const GTriple& gt, CouplingFn phi) {
  return [gt, phi](double x, const State& s) {
    const double y1 = s[0], y2 = s[2];
    if (y1 == 0.0) throw SingularError("coupled system: y1 = 0");
    const double g = gt.g(x);
    const double r = y2 / y1, f = phi.phi(r), df = phi.dphi(r);
    const double y13 = y1 * y1 * y1;
    const double a1 = ge3_accel(gt, x, y1, s[1]) - g / y13 * f - g * y2 / (2 * y13 * y1) * df;
    const double a2 = ge3_accel(gt, x, y2, s[3]) + g / (2 * y13) * df;
    return State{s[1], a1, s[3], a2};
  };
}

OdeField chebyshev7_field(double alpha, Chebyshev7Form form) {
  if (form == Chebyshev7Form::Printed) {
    const GTriple gt = gtriple_chebyshev(7);
    return [gt, alpha](double x, const State& s) {
      const double y1 = s[0], y2 = s[2];
      if (y1 == 0.0) throw SingularError("chebyshev7: y1 = 0");
      const double k = 7 * alpha / std::sqrt(1 - x * x), y14 = y1 * y1 * y1 * y1;
      return State{s[1], ge3_accel(gt, x, y1, s[1]) + 2 * k * y2 * y2 / (y14 * y1), s[3],
                   ge3_accel(gt, x, y2, s[3]) - k * y2 / y14};
    };
  }
  return coupled_deformed_field(gtriple_chebyshev(7), {[alpha](double s) { return alpha * s * s; },
                                                       [alpha](double s) { return 2 * alpha * s; }});
}

}  // namespace lhd
