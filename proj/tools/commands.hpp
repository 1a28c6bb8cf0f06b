#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace lhdcli {

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsage = 2, kNumerical = 3 };

// Raised for command-line misuse that the parser itself cannot catch.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string path;  // empty: stdout
  bool plot_data = false;
};

int cmd_simulate(const RunConfig& cfg, const OutputOptions& out);
int cmd_superpose(const RunConfig& cfg, const OutputOptions& out, std::optional<double> tol);
int cmd_scan(const RunConfig& cfg, const OutputOptions& out);
int cmd_potential(const std::vector<double>& zs, double x0, double x1, std::size_t n, const OutputOptions& out);

struct VerifyOptions {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool allow_known = false;
  std::string report;  // CSV report path, optional
};
int cmd_verify(const VerifyOptions& opt);

}  // namespace lhdcli
