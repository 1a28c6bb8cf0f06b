#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhd {

using State = std::vector<double>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised where a symplectic density or a realization degenerates.
class SingularError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t_last, State last)
      : std::runtime_error(what), t_last_(t_last), last_(std::move(last)) {}
  double t_last() const noexcept { return t_last_; }
  const State& last_state() const noexcept { return last_; }

 private:
  double t_last_;
  State last_;
};

// sinh(x)/x, equal to 1 at 0.
double sinhc(double x);
// d/dx sinhc(x) = (cosh x - sinhc x)/x.
double sinhc_prime(double x);
// (1 - exp(-z x))/z, equal to x at z = 0.
double expm1_ratio(double z, double x);

using PlaneFn = std::function<double(double, double)>;

// Central differences; step <= 0 selects eps^(1/3) * max(1, |coord|).
std::array<double, 2> central_gradient(const PlaneFn& f, double x, double y, double step = 0.0);

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_steps = 1000000;
  double initial_step = 0.0;  // <= 0: chosen automatically
  double max_step = 0.0;      // <= 0: unbounded

  void validate() const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<State> y;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  std::size_t size() const noexcept { return t.size(); }
  const State& back() const { return y.back(); }
};

using OdeField = std::function<State(double, const State&)>;
using StatePredicate = std::function<bool(const State&)>;

Trajectory integrate_fixed_rk4(const OdeField& f, double t0, double t1, const State& s0, double dt,
                               const StatePredicate& domain = {});

// Dormand-Prince 5(4) with proportional step control.
Trajectory integrate_adaptive(const OdeField& f, double t0, double t1, const State& s0,
                              const IntegratorConfig& cfg = {}, const StatePredicate& domain = {});

// States at the given nondecreasing times, starting from s0 at times.front().
std::vector<State> integrate_at(const OdeField& f, const std::vector<double>& times, const State& s0,
                                const IntegratorConfig& cfg = {}, const StatePredicate& domain = {});
// n + 1 evenly spaced points on [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

// Integral of f(x) (1-x^2)^(-1/2) over [-1,1] via x = cos(theta), midpoint rule.
double quad_chebyshev_weight(const std::function<double(double)>& f, std::size_t n_nodes);

}  // namespace lhd
