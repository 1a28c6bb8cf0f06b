#pragma once

#include <array>
#include <optional>

#include "lhdeform/core.hpp"

namespace lhd {

// (u, v) are stored as PhasePoint{x = u, y = v}.
PlanarLHFamily complex_riccati_family();
DeformedTriple complex_riccati_deformed(double z);
double complex_riccati_F2(PhasePoint p1, PhasePoint p2);
double complex_riccati_F2_deformed(double z, PhasePoint p1, PhasePoint p2);

// (u,v) -> (x,y) = (+-c^{1/4}/sqrt|v|, -+c^{1/4} u/sqrt|v|); branch is +1 or -1.
PhasePoint mp_complex_map(PhasePoint uv, int branch = 1, double c = 4);
// (x,y) -> (u,v) = (-y/x, v_sign sqrt(c)/x^2).
PhasePoint mp_complex_inverse(PhasePoint xy, int v_sign = 1, double c = 4);

PlanarLHFamily coupled_riccati_family();
DeformedTriple coupled_riccati_deformed(double z);
double coupled_riccati_F2(PhasePoint p1, PhasePoint p2);
double coupled_riccati_F2_deformed(double z, PhasePoint p1, PhasePoint p2);

// (u,v) -> (x,y) = (+-(4|c|)^{1/4}/sqrt|u-v|, -+(4|c|)^{1/4}(u+v)/(2 sqrt|u-v|)).
PhasePoint mp_coupled_map(PhasePoint uv, int branch = 1, double c = -1);
// (x,y) -> (u,v) = (+-sqrt|c|/x^2 - y/x, -+sqrt|c|/x^2 - y/x).
PhasePoint mp_coupled_inverse(PhasePoint xy, int branch = 1, double c = -1);

// Second-order Riccati equation in Hamiltonian form, (x, p) with p < 0.
PlanarLHFamily so_riccati_family();
struct SoRiccatiCoeffs {
  TimeCoefficient a0 = TimeCoefficient::constant(1);
  TimeCoefficient a1 = TimeCoefficient::constant(0);
  TimeCoefficient a2 = TimeCoefficient::constant(0);
};
// X1 - a0 X2 - a1 X3 - a2 X4
TimeField2 so_riccati_field(const SoRiccatiCoeffs& co);

struct SoRiccatiIntegrals {
  double F0 = 0;
  std::optional<double> F1, F2;
};
// F0 from (p1,p2,p3); F1 and F2 need the extra point p0.
SoRiccatiIntegrals so_riccati_integrals(PhasePoint p1, PhasePoint p2, PhasePoint p3,
                                        std::optional<PhasePoint> p0 = std::nullopt);
PhasePoint so_riccati_superpose(PhasePoint s1, PhasePoint s2, PhasePoint s3, double k1, double k2);

}  // namespace lhd
