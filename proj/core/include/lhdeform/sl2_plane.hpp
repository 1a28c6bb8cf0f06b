#pragma once

#include <string>

#include "lhdeform/core.hpp"

namespace lhd {

enum class Sl2Class { P2, I4, I5 };

double class_casimir(Sl2Class cls) noexcept;
std::string to_string(Sl2Class cls);
// Accepts "P2", "I4", "I5" (case-insensitive).
Sl2Class parse_sl2_class(const std::string& name);

PlanarLHFamily sl2_class_family(Sl2Class cls);
// h = (x, -xy, c/(4x) + xy^2), lambda = 1, x != 0.
PlanarLHFamily sl2_canonical_family(double c);

// Closed-form deformations of the three classes.  The I4 X_{z,3} uses the
// (x^2 - y^2) coefficient, which is the one reducing to the classical field.
DeformedTriple table42_triple(Sl2Class cls, double z);

double class_F2(Sl2Class cls, PhasePoint p1, PhasePoint p2);
double class_F2_deformed(Sl2Class cls, double z, PhasePoint p1, PhasePoint p2);

}  // namespace lhd
