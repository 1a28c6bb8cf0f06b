#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lhdeform/core.hpp"

namespace lhdtest {

using lhd::PhasePoint;

// Five-point central differences of a plane function.
inline std::array<double, 2> fd_grad(const std::function<double(PhasePoint)>& f, PhasePoint p, double h = 1e-3) {
  auto d = [&](double dx, double dy) {
    return (-f({p.x + 2 * dx, p.y + 2 * dy}) + 8 * f({p.x + dx, p.y + dy}) - 8 * f({p.x - dx, p.y - dy}) +
            f({p.x - 2 * dx, p.y - 2 * dy})) /
           (12 * h);
  };
  return {d(h, 0), d(0, h)};
}

// {f,g} = (g_y f_x - g_x f_y)/lambda from finite differences of the values only.
inline double fd_bracket(const std::function<double(PhasePoint)>& f, const std::function<double(PhasePoint)>& g,
                         double lambda, PhasePoint p, double h = 1e-3) {
  const auto df = fd_grad(f, p, h), dg = fd_grad(g, p, h);
  return (dg[1] * df[0] - dg[0] * df[1]) / lambda;
}

inline std::vector<PhasePoint> grid(double x0, double x1, double y0, double y1, int n,
                                    const std::function<bool(PhasePoint)>& keep = {}) {
  std::vector<PhasePoint> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PhasePoint p{x0 + (x1 - x0) * (i + 0.5) / n, y0 + (y1 - y0) * (j + 0.5) / n};
      if (!keep || keep(p)) out.push_back(p);
    }
  return out;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace lhdtest
