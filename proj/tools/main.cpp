#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lhdeform/numkit.hpp"

using namespace lhdcli;

int main(int argc, char** argv) {
  CLI::App app{"lhd: Lie-Hamilton systems and their deformations"};
  app.require_subcommand(1);

  std::string config, out, suite, report;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool plot = false, allow_known = false;
  std::vector<double> zs;
  double x0 = 0.1, x1 = 3;
  std::size_t n = 59;

  auto add_io = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config, "run configuration (TOML)");
    if (needs_config) c->required();
    sub->add_option("--out", out, "output CSV path (default: config output.path, else stdout)");
    sub->add_option("--seed", seed, "seed recorded with the run");
    sub->add_flag("--plot-data", plot, "whitespace-separated output for plotting");
  };

  auto* sim = app.add_subcommand("simulate", "integrate a family and tabulate its invariants");
  add_io(sim, true);
  auto* sup = app.add_subcommand("superpose", "compare a superposition rule against an integrated solution");
  add_io(sup, true);
  sup->add_option("--tol", tol, "sup-error bound");
  auto* scan = app.add_subcommand("scan", "invariant drift over a parameter sweep");
  add_io(scan, true);
  auto* pot = app.add_subcommand("potential", "position-dependent mass and oscillator potentials");
  add_io(pot, false);
  pot->add_option("--z", zs, "deformation parameters")->delimiter(',');
  pot->add_option("--x0", x0, "grid start");
  pot->add_option("--x1", x1, "grid end");
  pot->add_option("--n", n, "grid intervals");
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  ver->add_option("--suite", suite, "suite name")->required();
  ver->add_option("--seed", seed, "sampling seed");
  ver->add_option("--tol", tol, "tolerance override for sampled identity checks");
  ver->add_option("--out", report, "CSV report path");
  ver->add_flag("--allow-known", allow_known, "documented discrepancies do not fail the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (ver->parsed()) return cmd_verify({suite, seed, tol, allow_known, report});

    RunConfig cfg;
    if (!config.empty()) cfg = load_config(config);
    if (seed) cfg.seed = *seed;
    OutputOptions o{out.empty() ? cfg.output : out, plot};
    if (sim->parsed()) return cmd_simulate(cfg, o);
    if (sup->parsed()) return cmd_superpose(cfg, o, tol);
    if (scan->parsed()) return cmd_scan(cfg, o);
    if (pot->parsed()) {
      if (zs.empty()) zs = cfg.potential_z;
      if (zs.empty()) zs = {0.0, 0.5, 1.0};
      if (!config.empty()) {
        if (pot->count("--x0") == 0) x0 = cfg.potential_x0;
        if (pot->count("--x1") == 0) x1 = cfg.potential_x1;
        if (pot->count("--n") == 0) n = cfg.potential_n;
      }
      return cmd_potential(zs, x0, x1, n, o);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "lhd: config error: %s\n", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "lhd: usage error: %s\n", e.what());
    return kUsage;
  } catch (const lhd::IntegrationError& e) {
    std::fprintf(stderr, "lhd: integration failed: %s; last valid time %.17g\n", e.what(), e.t_last());
    return kNumerical;
  } catch (const lhd::DomainError& e) {
    std::fprintf(stderr, "lhd: numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "lhd: usage error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
