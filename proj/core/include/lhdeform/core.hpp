#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lhdeform/numkit.hpp"

namespace lhd {

struct PhasePoint {
  double x = 0;
  double y = 0;
};

using Vec2 = std::array<double, 2>;
using VectorField2 = std::function<Vec2(PhasePoint)>;
using TimeField2 = std::function<Vec2(double, PhasePoint)>;
using Density = std::function<double(PhasePoint)>;
using DomainPredicate = std::function<bool(PhasePoint)>;

struct ScalarField {
  std::function<double(PhasePoint)> value;
  std::function<Vec2(PhasePoint)> gradient;

  double operator()(PhasePoint p) const { return value(p); }
  Vec2 grad(PhasePoint p) const { return gradient(p); }
};

class TimeCoefficient {
 public:
  struct Constant {
    double a;
  };
  struct Sinusoid {
    double a, b, omega, phi;
  };
  struct Polynomial {
    std::vector<double> coeffs;  // ascending powers
  };
  struct Tabulated {
    std::vector<double> knots, values;
  };
  struct Custom {
    std::function<double(double)> fn;
  };

  TimeCoefficient() : kind_(Constant{0.0}) {}
  static TimeCoefficient constant(double a);
  static TimeCoefficient sinusoid(double a, double b, double omega, double phi = 0.0);
  static TimeCoefficient polynomial(std::vector<double> coeffs);
  static TimeCoefficient tabulated(std::vector<double> knots, std::vector<double> values);
  static TimeCoefficient custom(std::function<double(double)> fn);
  // t -> base(t)^2
  static TimeCoefficient squared(TimeCoefficient base);

  double operator()(double t) const;

 private:
  using Kind = std::variant<Constant, Sinusoid, Polynomial, Tabulated, Custom>;
  explicit TimeCoefficient(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// Expected value of {h_i, h_j} at a point.
struct Relation {
  int i = 0;
  int j = 0;
  std::function<double(PhasePoint)> rhs;
  std::string label;
};

struct SampleBox {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
};

struct PlanarLHFamily {
  std::string name;
  std::vector<VectorField2> fields;
  std::vector<ScalarField> hams;
  Density lambda;
  DomainPredicate domain;
  double casimir_c = 0;
  std::vector<Relation> bracket_table;
  SampleBox box;
};

// Deformed sl(2) triple in the generator order of its family.  roles[0] is the
// primitive (pivot) generator, roles[1] the one squared in the Casimir.
struct DeformedTriple {
  std::string name;
  double z = 0;
  std::array<ScalarField, 3> h;
  std::array<VectorField2, 3> X;
  std::array<int, 3> roles{0, 1, 2};
  double casimir_c = 0;
  Density lambda;
  DomainPredicate domain;
  SampleBox box;

  int pivot() const noexcept { return roles[0]; }
};

VectorField2 hamiltonian_field(ScalarField h, Density lambda);
double poisson_bracket(const ScalarField& f, const ScalarField& g, const Density& lambda, PhasePoint p);
// [X,Y] = DY.X - DX.Y with five-point central Jacobians; step <= 0 picks 1e-3*max(1,|coord|).
Vec2 lie_bracket(const VectorField2& X, const VectorField2& Y, PhasePoint p, double step = 0.0);

// Deformation of an sl(2) triple obeying {h1,h2}=-h1, {h1,h3}=-2h2, {h2,h3}=-h3.
DeformedTriple mt_deform(const PlanarLHFamily& fam, double z);

TimeField2 t_dependent_field(std::vector<VectorField2> fields, std::vector<TimeCoefficient> coeffs);

// Coproduct functions on n ordered copies, with gradients per copy.
struct CopyValues {
  std::array<double, 3> v{};
  std::vector<std::array<Vec2, 3>> grad;  // grad[m][k] = d v_k / d p_m
};

CopyValues n_copy_values(const DeformedTriple& tr, std::span<const PhasePoint> pts, bool with_grad = false);
std::array<double, 3> two_copy_values(const DeformedTriple& tr, PhasePoint p1, PhasePoint p2);

// sinhc(2 z a1) a1 a3 - a2^2 with (a1, a2, a3) in pivot-first order.
double casimir_F(const std::array<double, 3>& standard, double z);
// Same, for values in the triple's own generator order.
double casimir_F(const DeformedTriple& tr, const std::array<double, 3>& values);

// Hamiltonian flow of sum_k b_k(t) h^(n)_k on n coupled copies, state (x1,y1,...,xn,yn).
OdeField coupled_copy_field(const DeformedTriple& tr, std::array<TimeCoefficient, 3> b, int ncopies);
StatePredicate copies_domain(DomainPredicate dom, int ncopies);

// Adapters between plane fields and the integrator's state vectors.
OdeField plane_ode(TimeField2 f);
// Independent copies of one plane field.
OdeField plane_ode_copies(TimeField2 f, int ncopies);

// {h1,h2}=-h1, {h1,h3}=-2h2, {h2,h3}=-h3 on hams[0..2].
std::vector<Relation> sl2_relations(const std::vector<ScalarField>& hams);
// Deformed relations in pivot-first roles: {a,b}=-sinhc(2z h_a) h_a, {a,c}=-2h_b, {b,c}=-cosh(2z h_a) h_c.
std::vector<Relation> deformed_sl2_relations(const DeformedTriple& tr);

inline PhasePoint point_of(const State& s, int copy = 0) { return {s[2 * copy], s[2 * copy + 1]}; }

}  // namespace lhd
