#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bittery/config.hpp"

namespace bittery {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t seed = 0;
  double kT = 1.0;
};

// Executes the configured task, writes its artifacts under out_dir, and
// prints one summary line per result.  Returns a process exit status;
// configuration and invariant failures surface as ConfigError/Error.
int run_task(const ExperimentConfig& config, const RunOptions& options,
             std::ostream& out);

// The verification suite as a task: per-check summary lines plus a
// machine-readable verify.json.  Nonzero on any failing check.
int run_verify_all(std::uint64_t seed, const std::string& out_dir,
                   std::ostream& out);

}  // namespace bittery
