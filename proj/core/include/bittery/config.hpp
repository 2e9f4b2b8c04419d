#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bittery/errors.hpp"
#include "bittery/landauer.hpp"
#include "bittery/model.hpp"

namespace bittery {

// Parsed experiment configuration.  The JSON schema is documented in the
// README; unknown keys anywhere in the document are rejected.
struct ExperimentConfig {
  enum class Task { Maxwork, Sweep, Landauer, Addwork, Ledger, OracleVerify };

  struct StateConfig {
    enum class Kind { Thermal, Pure, LevelTotals, Weights };
    Kind kind = Kind::Thermal;
    std::int64_t pure_level = 0;
    std::vector<double> totals;
    std::vector<std::vector<double>> weights;
  };

  struct AnalyticBathConfig {
    int base = 2;
    double spacing = 1.0;
    std::int64_t levels = 64;
    double ref_log_mult = 0.0;
  };

  struct WeightConfig {
    double spacing = 1.0;
    std::int64_t levels = 2;
    double origin = 0.0;
  };

  struct WindowConfig {
    double w_min = 0.0;
    double w_max = 0.0;
  };

  Task task = Task::Maxwork;
  std::vector<SystemLevel> system;
  StateConfig state;
  std::optional<AnalyticBathConfig> analytic_bath;
  std::vector<BathSpec::ExplicitLevel> explicit_bath;
  std::int64_t cells = 0;
  std::optional<WeightConfig> weight;

  std::vector<double> epsilons;       // maxwork / sweep
  std::vector<std::string> schemes;   // deterministic | bounded | guaranteed
  std::int64_t bounded_c = 1;
  std::optional<StaircaseSchedule> schedule;          // landauer
  std::optional<WindowConfig> window;                 // addwork
  std::vector<std::pair<double, double>> ledger_distribution;  // (w, p)
  std::vector<std::string> oracle_epsilons;  // exact rationals, "p/q"
  std::int64_t dimension_cap = 4096;

  std::uint64_t digest = 0;  // FNV-1a over the raw config text

  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig parse(const std::string& text);

  SystemSpec make_system() const;
  DiagonalState make_state(const SystemSpec& system_spec,
                           const Temperature& temp) const;
  BathSpec make_bath() const;
  static const char* task_name(Task task);
};

std::uint64_t fnv1a64(const std::string& text);

}  // namespace bittery
