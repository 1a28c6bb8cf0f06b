#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <set>

#include "lhdeform/milne_pinney.hpp"
#include "lhdeform/oscillators.hpp"
#include "lhdeform/riccati.hpp"
#include "lhdeform/sisf.hpp"
#include "lhdeform/sl2_plane.hpp"
#include "lhdeform/suites.hpp"

namespace lhdcli {

using namespace lhd;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> breaks;  // row indices that start a new block in plot data
};

void write_table(std::ostream& os, const Table& t, bool plot) {
  const char* sep = plot ? " " : ",";
  if (plot) os << "# ";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? sep : "") << t.header[i];
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (plot && r > 0 && std::find(t.breaks.begin(), t.breaks.end(), r) != t.breaks.end()) os << "\n\n";
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? sep : "") << format_real(t.rows[r][i]);
    os << '\n';
  }
}

void emit(const Table& t, const OutputOptions& out) {
  if (out.path.empty()) {
    write_table(std::cout, t, out.plot_data);
    return;
  }
  std::ofstream os(out.path);
  if (!os) throw ConfigError(out.path + ": cannot open for writing");
  write_table(os, t, out.plot_data);
}

// ---------------------------------------------------------------------------

using InvariantFn = std::function<std::vector<double>(double, const State&)>;

struct Model {
  OdeField field;
  StatePredicate domain;
  std::array<std::string, 2> coords{"x", "y"};
  std::vector<std::string> invariant_names;
  InvariantFn invariants;
};

void allow_coefficients(const RunConfig& cfg, const std::set<std::string>& names) {
  for (const auto& [k, v] : cfg.coefficients)
    if (!names.count(k)) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw ConfigError("coefficients." + k + ": unknown coefficient for family '" + cfg.family + "' (expected " +
                        (list.empty() ? "none" : list) + ")");
    }
}

Model sl2_model(const DeformedTriple& tr, std::array<TimeCoefficient, 3> b, int n, std::array<std::string, 2> coords) {
  Model m;
  m.field = coupled_copy_field(tr, std::move(b), n);
  m.domain = copies_domain(tr.domain, n);
  m.coords = std::move(coords);
  m.invariant_names = {"Fz"};
  if (n >= 2) m.invariant_names.push_back("Fz2");
  m.invariants = [tr, n](double, const State& s) {
    const std::array<PhasePoint, 1> one{point_of(s, 0)};
    std::vector<double> v{casimir_F(tr, n_copy_values(tr, one).v)};
    if (n >= 2) v.push_back(casimir_F(tr, two_copy_values(tr, point_of(s, 0), point_of(s, 1))));
    return v;
  };
  return m;
}

std::array<TimeCoefficient, 3> b_coeffs(const RunConfig& cfg) {
  allow_coefficients(cfg, {"b1", "b2", "b3"});
  return {coefficient(cfg, "b1", 0), coefficient(cfg, "b2", 0), coefficient(cfg, "b3", 0)};
}

Model build_model(const RunConfig& cfg, int n) {
  const std::string& f = cfg.family;
  if (f.empty()) throw ConfigError("family.name: missing");
  if (f == "P2" || f == "I4" || f == "I5" || f == "p2" || f == "i4" || f == "i5")
    return sl2_model(table42_triple(parse_sl2_class(f), cfg.z), b_coeffs(cfg), n, {"x", "y"});
  if (f == "canonical") {
    const auto b = b_coeffs(cfg);
    return sl2_model(mt_deform(sl2_canonical_family(cfg.c.value_or(1)), cfg.z), b, n, {"x", "y"});
  }
  if (f == "milne_pinney") {
    allow_coefficients(cfg, {"omega"});
    return sl2_model(mp_deformed_triple(cfg.c.value_or(4), cfg.z),
                     {TimeCoefficient::squared(coefficient(cfg, "omega", 1)), TimeCoefficient::constant(0),
                      TimeCoefficient::constant(1)},
                     n, {"x", "y"});
  }
  if (f == "complex_riccati") return sl2_model(complex_riccati_deformed(cfg.z), b_coeffs(cfg), n, {"u", "v"});
  if (f == "coupled_riccati") return sl2_model(coupled_riccati_deformed(cfg.z), b_coeffs(cfg), n, {"u", "v"});
  if (f == "sisf") {
    allow_coefficients(cfg, {"rho0"});
    SisfParams prm;
    prm.rho0 = coefficient(cfg, "rho0", 0.8);
    prm.z = cfg.z;
    prm.c = cfg.c.value_or(1);
    Model m;
    m.coords = {"q", "p"};
    if (cfg.z == 0.0) {
      m.field = plane_ode_copies(sisf_field(prm.rho0), n);
      m.invariant_names = {"H"};
      m.invariants = [prm](double t, const State& s) {
        return std::vector<double>{sisf_hamiltonian(prm.rho0(t), {s[0], s[1]})};
      };
    } else {
      const SisfDeformed d = sisf_deformed(prm);
      m.field = sisf_coupled_field(prm, n);
      m.domain = copies_domain(d.triple.domain, n);
      m.invariant_names = {"Hz"};
      if (n >= 2) m.invariant_names.push_back("Fz2");
      m.invariants = [d, prm, n](double t, const State& s) {
        std::vector<double> v{d.hamiltonian(t, point_of(s, 0))};
        if (n >= 2) v.push_back(sisf_deformed_constant(prm.z, prm.c, {s[0], s[1]}, {s[2], s[3]}));
        return v;
      };
    }
    return m;
  }
  if (f == "so_riccati") {
    allow_coefficients(cfg, {"a0", "a1", "a2"});
    SoRiccatiCoeffs co{coefficient(cfg, "a0", 1), coefficient(cfg, "a1", 0), coefficient(cfg, "a2", 0)};
    Model m;
    m.field = plane_ode_copies(so_riccati_field(co), n);
    m.domain = copies_domain(so_riccati_family().domain, n);
    m.coords = {"x", "p"};
    if (n >= 3) m.invariant_names = {"F0"};
    m.invariants = [n](double, const State& s) {
      if (n < 3) return std::vector<double>{};
      return std::vector<double>{so_riccati_integrals(point_of(s, 0), point_of(s, 1), point_of(s, 2)).F0};
    };
    return m;
  }
  if (f == "damped") {
    allow_coefficients(cfg, {"a", "b", "c", "d", "f"});
    DampedCoeffs co{coefficient(cfg, "a", 0), coefficient(cfg, "b", 1), coefficient(cfg, "c", 1), coefficient(cfg, "d", 0),
                    coefficient(cfg, "f", 0)};
    Model m;
    m.field = plane_ode_copies(damped_field(co), n);
    m.coords = {"x", "p"};
    if (n >= 3) m.invariant_names = {"F3"};
    m.invariants = [n](double, const State& s) {
      if (n < 3) return std::vector<double>{};
      return std::vector<double>{damped_F3(point_of(s, 0), point_of(s, 1), point_of(s, 2))};
    };
    return m;
  }
  if (f == "h4") {
    allow_coefficients(cfg, {"f1", "f2", "f3"});
    const double z = cfg.z;
    Model m;
    m.field = plane_ode_copies(
        h4_deformed_field(z, {coefficient(cfg, "f1", 0), coefficient(cfg, "f2", 0), coefficient(cfg, "f3", 0)}), n);
    if (n >= 2) m.invariant_names = {"Fz", "Fz2"};
    m.invariants = [z, n](double, const State& s) {
      if (n < 2) return std::vector<double>{};
      const H4Invariants v = h4_invariants(z, point_of(s, 0), point_of(s, 1));
      return std::vector<double>{v.F_z, v.F_z2};
    };
    return m;
  }
  if (f == "h6") {
    allow_coefficients(cfg, {"f1", "f2", "f3", "f4", "f5"});
    const double z = cfg.z;
    Model m;
    m.field = plane_ode_copies(h6_deformed_field(z, {coefficient(cfg, "f1", 0), coefficient(cfg, "f2", 0),
                                                     coefficient(cfg, "f3", 0), coefficient(cfg, "f4", 0),
                                                     coefficient(cfg, "f5", 0)}),
                               n);
    m.invariant_names = {"Cz"};
    if (n >= 2) m.invariant_names.push_back("F2");
    m.invariants = [z, n](double, const State& s) {
      std::vector<double> v{h6_casimir_deformed(z, point_of(s, 0))};
      if (n >= 2) v.push_back(h6_F3_deformed(z, point_of(s, 0), point_of(s, 1)));
      return v;
    };
    return m;
  }
  throw ConfigError("family.name: unknown family '" + f +
                    "' (P2, I4, I5, canonical, milne_pinney, complex_riccati, coupled_riccati, sisf, so_riccati, "
                    "damped, h4, h6)");
}

State initial_state(const RunConfig& cfg) {
  if (cfg.initial.empty()) throw ConfigError("initial.states: at least one state is required");
  State s;
  for (const auto& p : cfg.initial) {
    s.push_back(p.x);
    s.push_back(p.y);
  }
  return s;
}

std::vector<std::string> state_columns(const Model& m, int n) {
  std::vector<std::string> out;
  for (int k = 0; k < n; ++k)
    for (const auto& c : m.coords) out.push_back(n == 1 ? c : c + std::to_string(k + 1));
  return out;
}

std::vector<double> safe_invariants(const Model& m, double t, const State& s) {
  try {
    return m.invariants(t, s);
  } catch (const DomainError&) {
    return std::vector<double>(m.invariant_names.size(), kNaN);
  }
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const OutputOptions& out) {
  const State s0 = initial_state(cfg);
  const int n = static_cast<int>(cfg.initial.size());
  const Model m = build_model(cfg, n);
  Table t;
  t.header = {"t"};
  for (const auto& c : state_columns(m, n)) t.header.push_back(c);
  for (const auto& c : m.invariant_names) t.header.push_back(c);
  int code = kPass;
  Trajectory tr;
  try {
    tr = integrate_adaptive(m.field, cfg.t0, cfg.t1, s0, cfg.integrator, m.domain);
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "lhd simulate: integration failed (%s); last valid time %s\n", e.what(),
                 format_real(e.t_last()).c_str());
    code = kNumerical;
  }
  if (cfg.t1 > cfg.t0)
    for (std::size_t i = 0; i < tr.size(); ++i) {
      std::vector<double> row{tr.t[i]};
      row.insert(row.end(), tr.y[i].begin(), tr.y[i].end());
      const auto inv = safe_invariants(m, tr.t[i], tr.y[i]);
      row.insert(row.end(), inv.begin(), inv.end());
      t.rows.push_back(std::move(row));
    }
  emit(t, out);
  return code;
}

int cmd_superpose(const RunConfig& cfg, const OutputOptions& out, std::optional<double> tol) {
  std::string rule = cfg.rule;
  if (rule.empty()) {
    if (cfg.family == "so_riccati" || cfg.family == "damped") rule = cfg.family;
    else if (cfg.family == "sisf") rule = "sisf_iso11";
    else throw ConfigError("superpose.rule: missing and no default for family '" + cfg.family + "'");
  }
  const NamedRule named = [&] {
    try {
      return superposition_rule(rule);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("superpose.rule: ") + e.what());
    }
  }();
  if (cfg.initial.size() < 2) throw UsageError("superpose needs a target and at least one particular solution");
  if (static_cast<int>(cfg.initial.size()) != named.particulars + 1)
    throw ConfigError("initial.states: rule '" + rule + "' needs a target and " + std::to_string(named.particulars) +
                      " particular solutions");
  if (cfg.z != 0.0) throw ConfigError("family.z: superposition rules apply to the undeformed system (z = 0)");
  const std::string owner = rule.rfind("sisf", 0) == 0 ? "sisf" : rule;
  if (cfg.family != owner)
    throw ConfigError("superpose.rule: rule '" + rule + "' does not belong to family '" + cfg.family + "'");
  const double bound = tol.value_or(cfg.tol.value_or(1e-5));

  const int n = static_cast<int>(cfg.initial.size());
  const Model m = build_model(cfg, n);
  const auto ts = linspace(cfg.t0, cfg.t1, std::max<std::size_t>(cfg.samples, 1));
  const auto ys = integrate_at(m.field, ts, initial_state(cfg), cfg.integrator, m.domain);
  auto parts_at = [&](std::size_t i) {
    std::vector<State> p;
    for (int k = 1; k < n; ++k) p.push_back({ys[i][2 * k], ys[i][2 * k + 1]});
    return p;
  };
  const SuperposeFn fn = named.factory({ys[0][0], ys[0][1]}, parts_at(0));

  Table t;
  t.header = {"t", m.coords[0], m.coords[1], m.coords[0] + "_pred", m.coords[1] + "_pred", "err"};
  double sup = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const State pred = fn(parts_at(i));
    const double err = std::max(std::abs(pred[0] - ys[i][0]), std::abs(pred[1] - ys[i][1]));
    sup = std::max(sup, err);
    t.rows.push_back({ts[i], ys[i][0], ys[i][1], pred[0], pred[1], err});
  }
  emit(t, out);
  std::fprintf(stderr, "lhd superpose: rule %s sup error %s tol %s\n", rule.c_str(), format_real(sup).c_str(),
               format_real(bound).c_str());
  return sup <= bound ? kPass : kCheckFailure;
}

int cmd_scan(const RunConfig& cfg, const OutputOptions& out) {
  if (cfg.scan_values.empty()) throw ConfigError("scan.values: at least one value is required");
  const State s0 = initial_state(cfg);
  const int n = static_cast<int>(cfg.initial.size());
  const auto ts = linspace(cfg.t0, cfg.t1, std::max<std::size_t>(cfg.samples, 1));
  const std::vector<std::string> names = build_model(cfg, n).invariant_names;

  struct Row {
    std::vector<double> drift;
    double t_reached = 0;
    bool ok = true;
  };
  auto run = [&](double v) {
    RunConfig c = cfg;
    if (cfg.scan_parameter == "z") c.z = v;
    else c.c = v;
    Row r;
    r.drift.assign(names.size(), kNaN);
    try {
      const Model m = build_model(c, n);
      const auto ys = integrate_at(m.field, ts, s0, c.integrator, m.domain);
      r.t_reached = ts.back();
      const auto ref = safe_invariants(m, ts.front(), ys.front());
      std::fill(r.drift.begin(), r.drift.end(), 0.0);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const auto v2 = safe_invariants(m, ts[i], ys[i]);
        for (std::size_t k = 0; k < names.size(); ++k)
          r.drift[k] = std::max(r.drift[k], std::abs(v2[k] - ref[k]) / std::max(1.0, std::abs(ref[k])));
      }
    } catch (const IntegrationError& e) {
      r.ok = false;
      r.t_reached = e.t_last();
    } catch (const DomainError&) {
      r.ok = false;
      r.t_reached = cfg.t0;
    }
    return r;
  };

  std::vector<std::future<Row>> jobs;
  for (double v : cfg.scan_values) jobs.push_back(std::async(std::launch::async, run, v));

  Table t;
  t.header = {cfg.scan_parameter};
  for (const auto& nm : names) t.header.push_back("drift_" + nm);
  t.header.push_back("t_reached");
  t.header.push_back("completed");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Row r = jobs[i].get();
    std::vector<double> row{cfg.scan_values[i]};
    row.insert(row.end(), r.drift.begin(), r.drift.end());
    row.push_back(r.t_reached);
    row.push_back(r.ok ? 1 : 0);
    t.rows.push_back(std::move(row));
  }
  emit(t, out);
  return kPass;
}

int cmd_potential(const std::vector<double>& zs, double x0, double x1, std::size_t n, const OutputOptions& out) {
  if (zs.empty()) throw UsageError("potential needs at least one z value");
  if (n == 0 || !(x1 >= x0)) throw UsageError("potential needs x1 >= x0 and at least one interval");
  Table t;
  t.header = {"z", "x", "m_z", "U_osc", "U_RW"};
  for (double z : zs) {
    t.breaks.push_back(t.rows.size());
    for (double x : linspace(x0, x1, n)) {
      const PdmProfile p = pdm_profile(z, x);
      t.rows.push_back({z, x, p.m_z, p.U_osc, p.U_RW});
    }
  }
  emit(t, out);
  return kPass;
}

int cmd_verify(const VerifyOptions& opt) {
  if (opt.suite.empty()) throw UsageError("--suite must name a suite");
  SuiteOptions so;
  if (opt.seed) so.seed = *opt.seed;
  so.tol = opt.tol;
  std::vector<CriterionResult> res;
  try {
    res = run_suite(opt.suite, so);
  } catch (const std::invalid_argument& e) {
    std::string names;
    for (const auto& s : suite_names()) names += " " + s;
    throw UsageError(std::string(e.what()) + "; known suites:" + names);
  }
  bool ok = true;
  std::vector<CheckReport> all;
  for (const auto& c : res) {
    std::printf("criterion %d: %s\n", c.id, c.title.c_str());
    for (const auto& ch : c.checks) {
      std::printf("  %-13s %s  err=%s tol=%s\n", role_label(ch).c_str(), ch.report.name.c_str(),
                  format_real(ch.report.max_rel).c_str(), format_real(ch.report.tol).c_str());
      if (ch.role == CheckRole::Required && !ch.report.pass) ok = false;
      if (ch.role == CheckRole::Known && !ch.report.pass && !opt.allow_known) ok = false;
      CheckReport r = ch.report;
      r.name = "c" + std::to_string(c.id) + " " + r.name + " [" + role_label(ch) + "]";
      all.push_back(std::move(r));
    }
    std::printf("criterion %d %s\n", c.id, criterion_status(c).c_str());
  }
  if (!opt.report.empty()) {
    std::ofstream os(opt.report);
    if (!os) throw ConfigError(opt.report + ": cannot open for writing");
    write_csv(os, all);
  }
  return ok ? kPass : kCheckFailure;
}

}  // namespace lhdcli
