#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "lhdeform/core.hpp"

namespace lhd {

struct SisfParams {
  TimeCoefficient rho0 = TimeCoefficient::constant(0.8);
  double z = 0;
  double c = 1;
};

// q = mean infected density, p = inverse standard deviation.
struct EpiState {
  double q = 0;
  double p = 0;
};

inline PhasePoint to_plane(EpiState s) { return {s.q, s.p}; }
inline EpiState to_epi(PhasePoint p) { return {p.x, p.y}; }

// dq/dt = q rho0 - q^2 - 1/p^2, dp/dt = -p rho0 + 2 p q.
TimeField2 sisf_field(TimeCoefficient rho0);
// q p (rho0 - q) + 1/p
double sisf_hamiltonian(double rho0, EpiState s);

// X1 = q d_q - p d_p, X2 = -(q^2 + 1/p^2) d_q + 2 q p d_p with Hamiltonians (q p, 1/p - q^2 p).
PlanarLHFamily sisf_family();

EpiState sisf_closed_form(double rho, double C1, double C2, double t);
// Max mismatch between the time derivative of the closed form and the SISf field.
double sisf_closed_form_residual(double rho, double C1, double C2, double t);

// (K2, K3) as functions of K1 = q1/q2 and (k1, k2); K2 = q1 p1, K3 = q1 p2.
std::array<double, 2> sisf_kkk(double K1, double k1, double k2);
// (k1, k2) for which the KKK relations hold at (target, sol2); multistart Newton.
std::optional<std::array<double, 2>> sisf_exact_constants(EpiState target, EpiState sol2);
EpiState sisf_superpose_exact(EpiState sol2, double k1, double k2, int branch = 1);

EpiState sisf_superpose_linear(EpiState sol2, double k1, double k2);

// Pairwise iso(1,1) constant (x_a - x_b)(y_a - y_b).
double iso11_constant(PhasePoint a, PhasePoint b);
PhasePoint iso11_superpose(PhasePoint s2, PhasePoint s3, double k1, double k2, double k3, int branch = 1);

// Symplectic chart sending h2 -> y and -h1 -> x y; singular on p q = +-1.
PhasePoint sisf_to_iso11(EpiState s);
EpiState iso11_to_sisf(PhasePoint xy);
// x = -q p, y = q - 1/(q p^2).
PhasePoint sisf_to_iso11_printed(EpiState s);

// k3_tol > 0 checks k3 against the (2,3) pair constant.
EpiState sisf_superpose_iso11(EpiState s2, EpiState s3, double k1, double k2, double k3, int branch = 1,
                              double k3_tol = 0);

// h1 = -q p, h2 = 1/p - q^2 p, h3 = p(2 p^2 q^2 + c) / (2(1 - p^2 q^2)) with their Hamiltonian fields.
// bracket_table: {h1,h2} = h2, {h1,h3} = -h3, {h2,h3} = -2 h1.
PlanarLHFamily sisf_sl2_triple(double c);
// The table with {h2,h3} = +2 h1.
std::vector<Relation> sisf_sl2_printed_relations(const PlanarLHFamily& fam);

struct SisfDeformed {
  DeformedTriple triple;  // generator order (h1, h2, h3), pivot h2
  TimeField2 field;       // Hamiltonian field of -rho0 h_{z;1} + h_{z;2}
  std::function<double(double, PhasePoint)> hamiltonian;
};
DeformedTriple sisf_deformed_triple(double z, double c);
SisfDeformed sisf_deformed(const SisfParams& params);
// {hz1,hz2} = sinhc hz2, {hz2,hz3} = 2 hz1, {hz1,hz3} = -cosh hz3.
std::vector<Relation> sisf_gb22_relations(const DeformedTriple& tr);
TimeField2 sisf_dssis_verbatim(double z, TimeCoefficient rho0);

// Coupled n-copy flow of -rho0 h_{z;1} + h_{z;2}.
OdeField sisf_coupled_field(const SisfParams& params, int ncopies);

double sisf_deformed_constant(double z, double c, EpiState a, EpiState b);
struct SisfConstants {
  double F12 = 0;
  double F13 = 0;
};
SisfConstants sisf_deformed_constants(double z, double c, EpiState p1, EpiState p2, EpiState p3);

}  // namespace lhd
