#pragma once

#include "lhdeform/core.hpp"

namespace lhd {

struct MpParams {
  double c = 4;
  double z = 0;
  TimeCoefficient omega = TimeCoefficient::constant(1);
};

PlanarLHFamily mp_family(double c);
DeformedTriple mp_deformed_triple(double c, double z);

// Deformed Milne-Pinney system, state (x, y) with y the momentum.
TimeField2 mp_deformed_rhs(const MpParams& params);
// The same system as a coupled two-copy flow of b = (Omega^2, 0, 1).
OdeField mp_two_copy_field(const MpParams& params);

double mp_F2(double c, PhasePoint p1, PhasePoint p2);
double mp_F2_deformed(double c, double z, PhasePoint p1, PhasePoint p2);

struct PdmProfile {
  double m_z;
  double U_osc;
  double U_RW;
};
PdmProfile pdm_profile(double z, double x);

// x'' + (1/x - z x / tanh(z x^2)) x'^2 + Omega^2 x sinhc(z x^2) - c z / (x tanh(z x^2)).
// At z = 0 the tanh ratios take their limits 1/x and c/x^3.
double mp_second_order_residual(const MpParams& params, double t, double x, double xdot, double xddot);

}  // namespace lhd
