#pragma once

#include <cstdint>
#include <vector>

#include "bittery/model.hpp"

namespace bittery {

// Gap schedule 0 = g_0 < g_1 < ... < g_N = g_max for the staircase reset
// of a degenerate qubit.  Geometric schedules grow the increments by a
// fixed ratio; ratio = 1 degenerates to Uniform.
struct StaircaseSchedule {
  enum class Rule { Uniform, Geometric };
  std::int64_t steps = 1;
  double g_max = 0.0;
  Rule rule = Rule::Uniform;
  double ratio = 2.0;  // Geometric only

  // Gap after k raises, k in [0, steps].  Validates on first use.
  std::vector<double> gaps() const;
};

struct ProtocolStep {
  double gap_before = 0.0;
  double gap_after = 0.0;
  double occupation = 0.0;  // p1 before the move
  double work = 0.0;        // dW done on the qubit by the driving field
  double heat = 0.0;        // dQ absorbed from the bath (negative: dissipated)
};

// Per-step record of a staircase protocol while the qubit is coupled to
// the bath.  dU = dW + dQ holds at every prefix.  The final decouple-and-
// lower move (reset) and initial free raise (withdrawal) fall outside the
// step list; their residuals are reported separately.
struct ProtocolTrace {
  std::vector<ProtocolStep> steps;
  double work_total = 0.0;
  double heat_total = 0.0;
  double delta_u = 0.0;
  double residual_occupation = 0.0;   // p1(g_max) left in the "empty" state
  double residual_energy_drop = 0.0;  // energy discarded by the final lowering
  double work_output() const { return -work_total; }
};

// Staircase reset of a maximally mixed qubit: raise |1> step by step,
// thermalizing after each raise; work converges (from above) to
// kT ln(2/(1+exp(-beta g_max))) as the schedule refines.
ProtocolTrace reset_work(const StaircaseSchedule& schedule,
                         const Temperature& temp);

// Time-reversed protocol: work output converges to the same quasistatic
// value from below, leaving the qubit maximally mixed.
ProtocolTrace withdrawal_work(const StaircaseSchedule& schedule,
                              const Temperature& temp);

// Exact quasistatic work at finite final gap: the integral of p1(g) from
// 0 to g_max, kT ln(2/(1+exp(-beta g_max))).  Converges to kT ln2 as
// g_max grows.
double quasistatic_reset_work(double g_max, const Temperature& temp);

// Thermal occupation of the raised state at gap g.
double excited_occupation(double gap, const Temperature& temp);

}  // namespace bittery
