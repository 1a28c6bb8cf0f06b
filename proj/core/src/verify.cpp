#include "lhdeform/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace lhd {

std::vector<PhasePoint> sample_points(const SampleSpec& spec, const DomainPredicate& domain) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ux(spec.box.x0, spec.box.x1), uy(spec.box.y0, spec.box.y1);
  std::vector<PhasePoint> pts;
  pts.reserve(spec.count);
  std::size_t rejected = 0;
  while (pts.size() < spec.count) {
    const PhasePoint p{ux(rng), uy(rng)};
    if (!domain || domain(p)) {
      pts.push_back(p);
    } else if (++rejected > spec.rejection_budget) {
      throw DomainError("sample_points: rejection budget exhausted");
    }
  }
  return pts;
}

ErrorAccumulator::ErrorAccumulator(std::string name, double tol) {
  r_.name = std::move(name);
  r_.tol = tol;
}

void ErrorAccumulator::add(double abs_err, double scale, std::vector<double> where) {
  const double rel = std::isnan(abs_err) ? std::numeric_limits<double>::infinity() : abs_err / std::max(1.0, std::abs(scale));
  ++r_.samples;
  r_.max_abs = std::max(r_.max_abs, std::isnan(abs_err) ? std::numeric_limits<double>::infinity() : abs_err);
  if (rel > r_.max_rel || r_.worst_point.empty()) {
    r_.max_rel = std::max(r_.max_rel, rel);
    r_.worst_point = std::move(where);
  }
}

CheckReport ErrorAccumulator::finish(std::string notes) const {
  CheckReport out = r_;
  out.notes = std::move(notes);
  out.pass = out.samples > 0 && out.max_rel <= out.tol;
  if (out.value == 0) out.value = out.max_rel;
  return out;
}

CheckReport check_brackets(const std::string& name, const std::vector<ScalarField>& hams, const Density& lambda,
                           const std::vector<Relation>& relations, const DomainPredicate& domain,
                           const SampleSpec& spec, double tol) {
  for (const auto& r : relations)
    if (r.i < 0 || r.j < 0 || static_cast<std::size_t>(std::max(r.i, r.j)) >= hams.size())
      throw std::invalid_argument("check_brackets: relation index out of range");
  ErrorAccumulator acc(name, tol);
  std::string worst_label;
  double worst = -1;
  for (const PhasePoint p : sample_points(spec, domain)) {
    for (const auto& r : relations) {
      const double lhs = poisson_bracket(hams[r.i], hams[r.j], lambda, p), rhs = r.rhs(p);
      const double err = std::abs(lhs - rhs), rel = err / std::max(1.0, std::abs(rhs));
      acc.add(err, rhs, {p.x, p.y});
      if (rel > worst) {
        worst = rel;
        worst_label = r.label;
      }
    }
  }
  return acc.finish(relations.empty() ? "no relations" : "worst relation " + worst_label);
}

CheckReport check_brackets(const PlanarLHFamily& fam, const std::vector<Relation>& relations, const SampleSpec& spec,
                           double tol) {
  SampleSpec s = spec;
  s.box = fam.box;
  return check_brackets(fam.name + " brackets", fam.hams, fam.lambda, relations, fam.domain, s, tol);
}

CheckReport check_brackets(const DeformedTriple& tr, const std::vector<Relation>& relations, const SampleSpec& spec,
                           double tol) {
  SampleSpec s = spec;
  s.box = tr.box;
  return check_brackets(tr.name + " brackets", {tr.h.begin(), tr.h.end()}, tr.lambda, relations, tr.domain, s, tol);
}

namespace {

CheckReport field_consistency(const std::string& name, const std::vector<VectorField2>& fields,
                              const std::vector<ScalarField>& hams, const Density& lambda,
                              const DomainPredicate& domain, const SampleSpec& spec, double tol) {
  if (fields.size() != hams.size()) throw std::invalid_argument("field_consistency: size mismatch");
  ErrorAccumulator acc(name, tol);
  for (const PhasePoint p : sample_points(spec, domain)) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const Vec2 a = fields[k](p), b = hamiltonian_field(hams[k], lambda)(p);
      const double err = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
      acc.add(err, std::max(std::abs(b[0]), std::abs(b[1])), {p.x, p.y, static_cast<double>(k)});
    }
  }
  return acc.finish();
}

}  // namespace

CheckReport check_field_consistency(const PlanarLHFamily& fam, const SampleSpec& spec, double tol) {
  SampleSpec s = spec;
  s.box = fam.box;
  return field_consistency(fam.name + " fields", fam.fields, fam.hams, fam.lambda, fam.domain, s, tol);
}

CheckReport check_field_consistency(const DeformedTriple& tr, const SampleSpec& spec, double tol) {
  SampleSpec s = spec;
  s.box = tr.box;
  return field_consistency(tr.name + " fields", {tr.X.begin(), tr.X.end()}, {tr.h.begin(), tr.h.end()}, tr.lambda,
                           tr.domain, s, tol);
}

CheckReport check_gradients(const std::string& name, const std::vector<ScalarField>& hams,
                            const DomainPredicate& domain, const SampleSpec& spec, double tol) {
  ErrorAccumulator acc(name, tol);
  for (const PhasePoint p : sample_points(spec, domain)) {
    for (std::size_t k = 0; k < hams.size(); ++k) {
      const auto& h = hams[k];
      const auto num = central_gradient([&](double x, double y) { return h({x, y}); }, p.x, p.y);
      const Vec2 g = h.grad(p);
      const double err = std::max(std::abs(num[0] - g[0]), std::abs(num[1] - g[1]));
      acc.add(err, std::max(std::abs(g[0]), std::abs(g[1])), {p.x, p.y, static_cast<double>(k)});
    }
  }
  return acc.finish();
}

CheckReport check_commutators(const std::string& name, const std::vector<VectorField2>& fields,
                              const std::vector<Commutator>& expected, const DomainPredicate& domain,
                              const SampleSpec& spec, double step, double tol) {
  for (const auto& c : expected)
    if (c.i < 0 || c.j < 0 || static_cast<std::size_t>(std::max(c.i, c.j)) >= fields.size())
      throw std::invalid_argument("check_commutators: index out of range");
  ErrorAccumulator acc(name, tol);
  std::string worst_label;
  double worst = -1;
  for (const PhasePoint p : sample_points(spec, domain)) {
    for (const auto& c : expected) {
      const Vec2 lb = lie_bracket(fields[c.i], fields[c.j], p, step), rhs = c.rhs(p);
      const double err = std::max(std::abs(lb[0] - rhs[0]), std::abs(lb[1] - rhs[1]));
      const double scale = std::max(std::abs(rhs[0]), std::abs(rhs[1]));
      acc.add(err, scale, {p.x, p.y});
      if (err / std::max(1.0, scale) > worst) {
        worst = err / std::max(1.0, scale);
        worst_label = c.label;
      }
    }
  }
  return acc.finish(expected.empty() ? "no commutators" : "worst commutator " + worst_label);
}

CheckReport invariant_drift(const std::string& name, const OdeField& field, const std::vector<StateFunction>& invariants,
                            const State& s0, double t0, double t1, const IntegratorConfig& cfg, double tol,
                            const StatePredicate& domain, std::size_t n_samples) {
  ErrorAccumulator acc(name, tol);
  const auto times = linspace(t0, t1, n_samples);
  std::vector<State> states;
  try {
    states = integrate_at(field, times, s0, cfg, domain);
  } catch (const IntegrationError& e) {
    CheckReport r = acc.finish(std::string("integration failed: ") + e.what());
    r.pass = false;
    r.max_rel = r.max_abs = std::numeric_limits<double>::infinity();
    r.worst_point = {e.t_last()};
    return r;
  }
  for (const auto& I : invariants) {
    const double ref = I(states.front());
    for (std::size_t i = 0; i < states.size(); ++i) acc.add(std::abs(I(states[i]) - ref), ref, {times[i]});
  }
  return acc.finish();
}

CheckReport convergence_order(const std::string& name, const std::function<double(double)>& quantity, double z0,
                              int halvings, double expected_order, double tol) {
  if (halvings < 1 || !(z0 > 0)) throw std::invalid_argument("convergence_order: need z0 > 0 and halvings >= 1");
  std::vector<double> lx, ly;
  double z = z0;
  for (int k = 0; k <= halvings; ++k, z /= 2) {
    const double q = std::abs(quantity(z));
    if (q == 0.0 || !std::isfinite(q)) throw DomainError("convergence_order: quantity vanished or diverged");
    lx.push_back(std::log(z));
    ly.push_back(std::log(q));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CheckReport r;
  r.name = name;
  r.samples = lx.size();
  r.tol = tol;
  r.value = slope;
  r.max_abs = r.max_rel = std::abs(slope - expected_order);
  r.pass = r.max_abs <= tol;
  r.worst_point = {z0};
  r.notes = "order " + format_real(slope);
  return r;
}

CheckReport superposition_residual(const std::string& name, const RuleFactory& rule, const std::vector<State>& target,
                                   const std::vector<std::vector<State>>& particulars,
                                   const std::vector<double>& times, double tol) {
  if (target.size() != times.size()) throw std::invalid_argument("superposition_residual: target/time mismatch");
  for (const auto& p : particulars)
    if (p.size() != times.size()) throw std::invalid_argument("superposition_residual: particular/time mismatch");
  ErrorAccumulator acc(name, tol);
  auto at = [&](std::size_t i) {
    std::vector<State> out;
    for (const auto& p : particulars) out.push_back(p[i]);
    return out;
  };
  try {
    const SuperposeFn fn = rule(target.front(), at(0));
    for (std::size_t i = 0; i < times.size(); ++i) {
      const State pred = fn(at(i));
      double err = 0, scale = 0;
      for (std::size_t k = 0; k < pred.size(); ++k) {
        err = std::max(err, std::abs(pred[k] - target[i][k]));
        scale = std::max(scale, std::abs(target[i][k]));
      }
      acc.add(err, scale, {times[i]});
    }
  } catch (const DomainError& e) {
    CheckReport r = acc.finish(std::string("rule failed: ") + e.what());
    r.pass = false;
    r.max_rel = r.max_abs = std::numeric_limits<double>::infinity();
    return r;
  }
  return acc.finish();
}

PlanarLHFamily corrupt_generator(const PlanarLHFamily& fam, int index, double eps) {
  if (index < 0 || static_cast<std::size_t>(index) >= fam.hams.size())
    throw std::invalid_argument("corrupt_generator: index out of range");
  PlanarLHFamily out = fam;
  const ScalarField h = fam.hams[index];
  out.hams[index] = {[h, eps](PhasePoint p) { return h(p) + eps * p.x * p.x; },
                     [h, eps](PhasePoint p) {
                       Vec2 g = h.grad(p);
                       g[0] += 2 * eps * p.x;
                       return g;
                     }};
  out.name = fam.name + "_corrupted";
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_point(const std::vector<double>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + format_real(p[i]);
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
  os << "check,pass,samples,max_abs,max_rel,tol,value,worst_point,notes\n";
  for (const auto& r : reports) {
    os << csv_escape(r.name) << ',' << (r.pass ? "true" : "false") << ',' << r.samples << ',' << format_real(r.max_abs)
       << ',' << format_real(r.max_rel) << ',' << format_real(r.tol) << ',' << format_real(r.value) << ','
       << join_point(r.worst_point) << ',' << csv_escape(r.notes) << '\n';
  }
}

void write_text(std::ostream& os, const std::vector<CheckReport>& reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  max_rel=" << format_real(r.max_rel)
       << " tol=" << format_real(r.tol);
    if (!r.worst_point.empty()) os << " worst=(" << join_point(r.worst_point) << ")";
    if (!r.notes.empty()) os << "  " << r.notes;
    os << '\n';
  }
  os << passed << '/' << reports.size() << " checks passed\n";
}

}  // namespace lhd
