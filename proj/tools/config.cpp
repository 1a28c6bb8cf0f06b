#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace lhdcli {

namespace {

std::string where(const toml::node& n, const std::string& key) {
  const auto& src = n.source();
  std::string out = key;
  if (src.path) out = *src.path + ":" + std::to_string(src.begin.line) + ": " + key;
  else if (src.begin.line) out = "line " + std::to_string(src.begin.line) + ": " + key;
  return out;
}

[[noreturn]] void fail(const toml::node& n, const std::string& key, const std::string& msg) {
  throw ConfigError(where(n, key) + ": " + msg);
}

void only_keys(const toml::table& t, const std::string& section, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : t) {
    const std::string key(k.str());
    if (!allowed.count(key)) fail(v, section.empty() ? key : section + "." + key, "unknown key");
  }
}

double number(const toml::node& n, const std::string& key) {
  if (auto v = n.value<double>()) return *v;
  fail(n, key, "expected a number");
}

std::vector<double> numbers(const toml::node& n, const std::string& key) {
  const auto* arr = n.as_array();
  if (!arr) fail(n, key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(number((*arr)[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t count(const toml::node& n, const std::string& key) {
  const auto v = n.value<std::int64_t>();
  if (!v || *v < 0) fail(n, key, "expected a non-negative integer");
  return static_cast<std::size_t>(*v);
}

std::string text(const toml::node& n, const std::string& key) {
  if (auto v = n.value<std::string>()) return *v;
  fail(n, key, "expected a string");
}

lhd::TimeCoefficient parse_coefficient(const toml::node& n, const std::string& key) {
  if (n.is_number()) return lhd::TimeCoefficient::constant(number(n, key));
  const auto* t = n.as_table();
  if (!t) fail(n, key, "expected a number or a table with 'kind'");
  const auto* kind = t->get("kind");
  if (!kind) fail(n, key, "missing 'kind'");
  const std::string k = text(*kind, key + ".kind");
  auto get = [&](const char* name, double fallback) {
    const auto* v = t->get(name);
    return v ? number(*v, key + "." + name) : fallback;
  };
  auto need = [&](const char* name) -> const toml::node& {
    const auto* v = t->get(name);
    if (!v) fail(n, key, std::string("missing '") + name + "'");
    return *v;
  };
  try {
    if (k == "constant") {
      only_keys(*t, key, {"kind", "value"});
      return lhd::TimeCoefficient::constant(get("value", 0));
    }
    if (k == "sinusoid") {
      only_keys(*t, key, {"kind", "a", "b", "omega", "phi"});
      return lhd::TimeCoefficient::sinusoid(get("a", 0), get("b", 1), get("omega", 1), get("phi", 0));
    }
    if (k == "polynomial") {
      only_keys(*t, key, {"kind", "coeffs"});
      return lhd::TimeCoefficient::polynomial(numbers(need("coeffs"), key + ".coeffs"));
    }
    if (k == "tabulated") {
      only_keys(*t, key, {"kind", "knots", "values"});
      return lhd::TimeCoefficient::tabulated(numbers(need("knots"), key + ".knots"),
                                             numbers(need("values"), key + ".values"));
    }
  } catch (const std::invalid_argument& e) {
    fail(n, key, e.what());
  }
  fail(*kind, key + ".kind", "unknown kind '" + k + "' (constant, sinusoid, polynomial, tabulated)");
}

const toml::table* section(const toml::table& root, const char* name) {
  const auto* n = root.get(name);
  if (!n) return nullptr;
  if (!n->is_table()) fail(*n, name, "expected a table");
  return n->as_table();
}

RunConfig from_table(const toml::table& root) {
  RunConfig cfg;
  only_keys(root, "", {"seed", "family", "coefficients", "initial", "time", "integrator", "output", "scan", "superpose",
                       "potential"});
  if (const auto* n = root.get("seed")) cfg.seed = count(*n, "seed");

  if (const auto* f = section(root, "family")) {
    only_keys(*f, "family", {"name", "c", "z"});
    if (const auto* n = f->get("name")) cfg.family = text(*n, "family.name");
    if (const auto* n = f->get("c")) cfg.c = number(*n, "family.c");
    if (const auto* n = f->get("z")) cfg.z = number(*n, "family.z");
  }
  if (const auto* co = section(root, "coefficients"))
    for (const auto& [k, v] : *co) cfg.coefficients[std::string(k.str())] = parse_coefficient(v, "coefficients." + std::string(k.str()));
  if (const auto* in = section(root, "initial")) {
    only_keys(*in, "initial", {"states"});
    if (const auto* n = in->get("states")) {
      const auto* arr = n->as_array();
      if (!arr) fail(*n, "initial.states", "expected an array of [x, y] pairs");
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const std::string key = "initial.states[" + std::to_string(i) + "]";
        const auto xy = numbers((*arr)[i], key);
        if (xy.size() != 2) fail((*arr)[i], key, "expected two numbers");
        cfg.initial.push_back({xy[0], xy[1]});
      }
    }
  }
  if (const auto* t = section(root, "time")) {
    only_keys(*t, "time", {"t0", "t1", "samples"});
    if (const auto* n = t->get("t0")) cfg.t0 = number(*n, "time.t0");
    if (const auto* n = t->get("t1")) cfg.t1 = number(*n, "time.t1");
    if (const auto* n = t->get("samples")) cfg.samples = count(*n, "time.samples");
    if (cfg.t1 < cfg.t0) fail(*t, "time", "t1 precedes t0");
  }
  if (const auto* ig = section(root, "integrator")) {
    only_keys(*ig, "integrator", {"abs_tol", "rel_tol", "max_steps", "initial_step", "max_step"});
    if (const auto* n = ig->get("abs_tol")) cfg.integrator.abs_tol = number(*n, "integrator.abs_tol");
    if (const auto* n = ig->get("rel_tol")) cfg.integrator.rel_tol = number(*n, "integrator.rel_tol");
    if (const auto* n = ig->get("max_steps")) cfg.integrator.max_steps = count(*n, "integrator.max_steps");
    if (const auto* n = ig->get("initial_step")) cfg.integrator.initial_step = number(*n, "integrator.initial_step");
    if (const auto* n = ig->get("max_step")) cfg.integrator.max_step = number(*n, "integrator.max_step");
    try {
      cfg.integrator.validate();
    } catch (const std::exception& e) {
      fail(*ig, "integrator", e.what());
    }
  }
  if (const auto* o = section(root, "output")) {
    only_keys(*o, "output", {"path"});
    if (const auto* n = o->get("path")) cfg.output = text(*n, "output.path");
  }
  if (const auto* s = section(root, "scan")) {
    only_keys(*s, "scan", {"parameter", "values"});
    if (const auto* n = s->get("parameter")) cfg.scan_parameter = text(*n, "scan.parameter");
    if (const auto* n = s->get("values")) cfg.scan_values = numbers(*n, "scan.values");
    if (cfg.scan_parameter != "z" && cfg.scan_parameter != "c") fail(*s, "scan.parameter", "expected \"z\" or \"c\"");
  }
  if (const auto* s = section(root, "superpose")) {
    only_keys(*s, "superpose", {"rule", "tol"});
    if (const auto* n = s->get("rule")) cfg.rule = text(*n, "superpose.rule");
    if (const auto* n = s->get("tol")) cfg.tol = number(*n, "superpose.tol");
  }
  if (const auto* s = section(root, "potential")) {
    only_keys(*s, "potential", {"z", "x0", "x1", "n"});
    if (const auto* n = s->get("z")) cfg.potential_z = numbers(*n, "potential.z");
    if (const auto* n = s->get("x0")) cfg.potential_x0 = number(*n, "potential.x0");
    if (const auto* n = s->get("x1")) cfg.potential_x1 = number(*n, "potential.x1");
    if (const auto* n = s->get("n")) cfg.potential_n = count(*n, "potential.n");
  }
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& src, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(src, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ConfigError(os.str());
  }
  return from_table(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

lhd::TimeCoefficient coefficient(const RunConfig& cfg, const std::string& name, double fallback) {
  const auto it = cfg.coefficients.find(name);
  return it == cfg.coefficients.end() ? lhd::TimeCoefficient::constant(fallback) : it->second;
}

}  // namespace lhdcli
