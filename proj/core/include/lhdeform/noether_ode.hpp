#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lhdeform/numkit.hpp"

namespace lhd {

using RealFn = std::function<double(double)>;

// T_n = cos(n arccos x); U_n = sin(n arccos x).
double chebyshev_T(int n, double x);
double chebyshev_U(int n, double x);

enum class ChebyshevKind { T, U };
double chebyshev_orthogonality(int n, int m, ChebyshevKind kind = ChebyshevKind::T);

// g with two independent solutions T, U of y'' - (g'/2g) y' + g y = 0.
struct GTriple {
  std::string name;
  RealFn g, dg;
  RealFn T, dT;
  RealFn U, dU;
};

GTriple gtriple_constant();
GTriple gtriple_linear();
// g = n^2/(1 - x^2) with T = U_n and U = T_n.
GTriple gtriple_chebyshev(int n);

double wronskian(const GTriple& gt, double x);
// Residual of the linear equation for T and for U at x.
std::array<double, 2> ge3_residual(const GTriple& gt, double x);
// Throws DomainError if a residual exceeds tol or W vanishes at any sample.
void validate_gtriple(const GTriple& gt, const std::vector<double>& xs, double tol = 1e-8);

// State (y, y'), independent variable x.
OdeField ge3_field(const GTriple& gt);
// y'' = (g'/2g) y' - g y + 2 alpha g / y^3
OdeField deformed_ge3_field(const GTriple& gt, double alpha);

struct PsiValues {
  double psi0 = 0;
  double psi3 = 0;
  double psi0_verbatim = 0;
  double psi3_verbatim = 0;
};
// psi0 = (W/sqrt g)(y'^2/(2g) + y^2/2 + alpha/y^2)
// psi3 = -(T T'(y'^2 + g(2 alpha/y^2 - y^2)) + y y'(4 g T^2 - 3 g + 2 T'^2)) / (g sqrt g)
PsiValues psi_invariants(const GTriple& gt, double alpha, double x, double y, double yp);

struct CouplingFn {
  RealFn phi, dphi;
};
// State (y1, y1', y2, y2').
OdeField coupled_deformed_field(const GTriple& gt, CouplingFn phi);
// Printed: the displayed Chebyshev system, coefficients 14 alpha / sqrt(1 - x^2) and 7 alpha / sqrt(1 - x^2).
// Family: coupled_deformed_field with g = 49/(1 - x^2), phi(s) = alpha s^2.
enum class Chebyshev7Form { Printed, Family };
OdeField chebyshev7_field(double alpha, Chebyshev7Form form = Chebyshev7Form::Printed);

}  // namespace lhd
