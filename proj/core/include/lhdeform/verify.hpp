#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lhdeform/core.hpp"

namespace lhd {

struct SampleSpec {
  std::size_t count = 200;
  SampleBox box;
  std::uint64_t seed = 20240531;
  std::size_t rejection_budget = 100000;
};

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double max_abs = 0;
  double max_rel = 0;
  double tol = 0;
  std::vector<double> worst_point;
  bool pass = false;
  std::string notes;
  double value = 0;  // check-specific measurement (e.g. an estimated order)
};

// Uniform in-domain points; throws DomainError when the rejection budget runs out.
std::vector<PhasePoint> sample_points(const SampleSpec& spec, const DomainPredicate& domain);

// Records one error sample; the report passes iff max_rel <= tol.
class ErrorAccumulator {
 public:
  ErrorAccumulator(std::string name, double tol);
  void add(double abs_err, double scale, std::vector<double> where);
  CheckReport finish(std::string notes = {}) const;

 private:
  CheckReport r_;
};

CheckReport check_brackets(const std::string& name, const std::vector<ScalarField>& hams, const Density& lambda,
                           const std::vector<Relation>& relations, const DomainPredicate& domain,
                           const SampleSpec& spec, double tol = 1e-8);
CheckReport check_brackets(const PlanarLHFamily& fam, const std::vector<Relation>& relations, const SampleSpec& spec,
                           double tol = 1e-8);
CheckReport check_brackets(const DeformedTriple& tr, const std::vector<Relation>& relations, const SampleSpec& spec,
                           double tol = 1e-8);

// Analytic fields against Hamiltonian fields built from the analytic gradients.
CheckReport check_field_consistency(const PlanarLHFamily& fam, const SampleSpec& spec, double tol = 1e-9);
CheckReport check_field_consistency(const DeformedTriple& tr, const SampleSpec& spec, double tol = 1e-9);
// Analytic gradients against central differences of the values.
CheckReport check_gradients(const std::string& name, const std::vector<ScalarField>& hams,
                            const DomainPredicate& domain, const SampleSpec& spec, double tol = 1e-6);

struct Commutator {
  int i = 0;
  int j = 0;
  std::function<Vec2(PhasePoint)> rhs;
  std::string label;
};
CheckReport check_commutators(const std::string& name, const std::vector<VectorField2>& fields,
                              const std::vector<Commutator>& expected, const DomainPredicate& domain,
                              const SampleSpec& spec, double step = 0.0, double tol = 1e-4);

using StateFunction = std::function<double(const State&)>;
// max |I(t) - I(t0)| / max(1, |I(t0)|) over n_samples + 1 evenly spaced times.
CheckReport invariant_drift(const std::string& name, const OdeField& field, const std::vector<StateFunction>& invariants,
                            const State& s0, double t0, double t1, const IntegratorConfig& cfg = {},
                            double tol = 1e-6, const StatePredicate& domain = {}, std::size_t n_samples = 200);

// Least-squares slope of log|q(z)| against log z over z0, z0/2, ...; value holds the order.
CheckReport convergence_order(const std::string& name, const std::function<double(double)>& quantity, double z0,
                              int halvings, double expected_order, double tol);

using SuperposeFn = std::function<State(const std::vector<State>& particulars)>;
// Builds the rule with its constants fixed from the target and particulars at t0.
using RuleFactory = std::function<SuperposeFn(const State& target0, const std::vector<State>& particulars0)>;
// target[i] and particulars[k][i] are states at times[i].
CheckReport superposition_residual(const std::string& name, const RuleFactory& rule, const std::vector<State>& target,
                                   const std::vector<std::vector<State>>& particulars,
                                   const std::vector<double>& times, double tol);

// Adds eps * x^2 to generator index (value and gradient), leaving its field untouched.
PlanarLHFamily corrupt_generator(const PlanarLHFamily& fam, int index, double eps = 1e-3);

std::string format_real(double v);
void write_csv(std::ostream& os, const std::vector<CheckReport>& reports);
void write_text(std::ostream& os, const std::vector<CheckReport>& reports);

}  // namespace lhd
