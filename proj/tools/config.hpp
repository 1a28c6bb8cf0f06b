#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lhdeform/core.hpp"

namespace lhdcli {

// Parse or validation failure; what() carries the source position when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family;
  std::optional<double> c;
  double z = 0;
  std::map<std::string, lhd::TimeCoefficient> coefficients;
  std::vector<lhd::PhasePoint> initial;
  double t0 = 0;
  double t1 = 1;
  std::size_t samples = 100;
  lhd::IntegratorConfig integrator;
  std::string output;
  std::uint64_t seed = 0;

  std::string scan_parameter = "z";
  std::vector<double> scan_values;

  std::string rule;
  std::optional<double> tol;

  std::vector<double> potential_z;
  double potential_x0 = 0.1, potential_x1 = 3;
  std::size_t potential_n = 59;
};

RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

// Coefficient by name, or the fallback when the config leaves it out.
lhd::TimeCoefficient coefficient(const RunConfig& cfg, const std::string& name, double fallback);

}  // namespace lhdcli
