#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bittery {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // one-line diagnostic, filled on pass and fail
};

// The full verification suite.  Every check is deterministic given the
// seed; the expected verdict is all-pass for any seed.
std::vector<CheckResult> verify_all(std::uint64_t seed);

// Individual checks, in suite order.
CheckResult check_scheme_independence(std::uint64_t seed);
CheckResult check_formula_vs_oracle();
CheckResult check_schur_majorization(std::uint64_t seed);
CheckResult check_landauer_convergence();
CheckResult check_additional_work_properties();
CheckResult check_entropy_certificates(std::uint64_t seed);
CheckResult check_shell_free_energy_invariance(std::uint64_t seed);
CheckResult check_thermal_fixed_point(std::uint64_t seed);
CheckResult check_pure_state_smoothing();

}  // namespace bittery
