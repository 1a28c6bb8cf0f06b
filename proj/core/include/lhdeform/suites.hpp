#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lhdeform/verify.hpp"

namespace lhd {

// Required checks gate the exit status.  Known checks are required checks whose
// failure is a documented discrepancy of the source formulas.  Advisory checks
// are reported only.
enum class CheckRole { Required, Known, Advisory };

struct SuiteCheck {
  CheckReport report;
  CheckRole role = CheckRole::Required;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<SuiteCheck> checks;
};

struct SuiteOptions {
  std::uint64_t seed = 20240531;
  // Overrides the tolerance of the sampled identity checks (fields, brackets, Casimirs).
  std::optional<double> tol;
};

struct NamedRule {
  RuleFactory factory;
  int particulars = 0;
};
// "so_riccati", "damped", "sisf_exact", "sisf_iso11", "sisf_linear"; states are (x, p) or (q, p) pairs.
NamedRule superposition_rule(const std::string& name);
std::vector<std::string> superposition_rule_names();

// Acceptance criteria 1..11.
CriterionResult run_criterion(int id, const SuiteOptions& opt = {});

// Named subsets: "all", "criterion-N", "fields", "sl2-tables", "casimir", "drift", "limits",
// "superposition", "chebyshev", "advisory", "negative".  Throws std::invalid_argument otherwise.
std::vector<CriterionResult> run_suite(const std::string& name, const SuiteOptions& opt = {});
std::vector<std::string> suite_names();

// "PASS", "FAIL", "FAIL (known discrepancy)" or "ADVISORY".
std::string criterion_status(const CriterionResult& c);
// False iff a required, non-known check failed.
bool criterion_ok(const CriterionResult& c);
std::string role_label(const SuiteCheck& c);

}  // namespace lhd
