#pragma once

#include <array>

#include "lhdeform/core.hpp"

namespace lhd {

// Two-photon realization: hams v0..v5 = (1, y, -x, xy, y^2/2, -x^2/2), fields[0] = 0.
PlanarLHFamily h6_family();
double h6_casimir(PhasePoint p);
// Classical three-copy constant (x1(y2-y3) + x2(y3-y1) + x3(y1-y2))^2.
double h6_F3(PhasePoint p1, PhasePoint p2, PhasePoint p3);

struct DampedCoeffs {
  TimeCoefficient a, b, c, d, f;
};
// f X1 - d X2 + a X3 + b X4 - c X5 on (x, p).
TimeField2 damped_field(const DampedCoeffs& co);
// (x2-x3)p1 + (x3-x1)p2 + (x1-x2)p3; damped_F3 is its square.
double damped_area(PhasePoint p1, PhasePoint p2, PhasePoint p3);
double damped_F3(PhasePoint p1, PhasePoint p2, PhasePoint p3);
// Copy 1 replaced by copy 4: F3(p4, p2, p3).
double damped_F3_14(PhasePoint p2, PhasePoint p3, PhasePoint p4);
// Copy 2 replaced by copy 4: F3(p1, p4, p3).
double damped_F3_24(PhasePoint p1, PhasePoint p3, PhasePoint p4);

// r1 = damped_area(p1,p2,p3), r2 = damped_area(p1,p3,p4) fix (x1,p1) from the other three solutions.
PhasePoint damped_superpose_signed(PhasePoint s2, PhasePoint s3, PhasePoint s4, double r1, double r2);
// Squared constants k = r^2 with the root signs given separately.
PhasePoint damped_superpose(PhasePoint s2, PhasePoint s3, PhasePoint s4, double k1, double k2, int sign1 = 1,
                            int sign2 = 1);

// v0 = 1, v1 = e^{-zx} y, v2 = -x, v3 = (1 - e^{-zx}) y / z.
PlanarLHFamily h4_deformed_family(double z);
// f1 X1z + f2 X2z + f3 X3z.
TimeField2 h4_deformed_field(double z, std::array<TimeCoefficient, 3> f);
struct H4Invariants {
  double F_z;
  double F_z2;
};
// z = 0 returns the limits 0 and (x1-x2)(y1-y2).
H4Invariants h4_invariants(double z, PhasePoint p1, PhasePoint p2);

// v4 = e^{-zx} y^2/2, v5 = -((e^{zx}-1)/z)^2/2 on top of the h4 functions.
PlanarLHFamily h6_deformed_family(double z);
TimeField2 h6_deformed_field(double z, std::array<TimeCoefficient, 5> f);
double h6_casimir_deformed(double z, PhasePoint p);
// Two-copy deformed constant, evaluated as displayed; z = 0 returns its limit 0.
double h6_F3_deformed(double z, PhasePoint p1, PhasePoint p2);

}  // namespace lhd
