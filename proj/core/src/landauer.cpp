#include "bittery/landauer.hpp"

#include <cmath>

namespace bittery {

double excited_occupation(double gap, const Temperature& temp) {
  const double x = std::exp(-temp.beta() * gap);
  return x / (1.0 + x);
}

double quasistatic_reset_work(double g_max, const Temperature& temp) {
  // integral of p1(g) dg = kT ln((1 + 1)/(1 + exp(-beta g_max)))
  return temp.kT() *
         (std::log(2.0) - std::log1p(std::exp(-temp.beta() * g_max)));
}

std::vector<double> StaircaseSchedule::gaps() const {
  if (steps < 1) throw InvalidSchedule("StaircaseSchedule: need steps >= 1");
  if (!(g_max > 0.0))
    throw InvalidSchedule("StaircaseSchedule: need g_max > 0");
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  if (rule == Rule::Uniform || ratio == 1.0) {
    for (std::int64_t k = 0; k <= steps; ++k)
      g[static_cast<std::size_t>(k)] =
          g_max * static_cast<double>(k) / static_cast<double>(steps);
  } else {
    if (!(ratio > 0.0))
      throw InvalidSchedule("StaircaseSchedule: ratio must be positive");
    if (static_cast<double>(steps) * std::abs(std::log(ratio)) > 600.0)
      throw InvalidSchedule("StaircaseSchedule: geometric schedule overflows");
    // increments proportional to ratio^k, normalized to reach g_max
    double sum = 0.0;
    std::vector<double> inc(static_cast<std::size_t>(steps));
    for (std::int64_t k = 0; k < steps; ++k) {
      inc[static_cast<std::size_t>(k)] =
          std::pow(ratio, static_cast<double>(k));
      sum += inc[static_cast<std::size_t>(k)];
    }
    double acc = 0.0;
    g[0] = 0.0;
    for (std::int64_t k = 0; k < steps; ++k) {
      acc += inc[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(k) + 1] = g_max * acc / sum;
    }
    g[static_cast<std::size_t>(steps)] = g_max;  // pin the endpoint
  }
  for (std::int64_t k = 0; k < steps; ++k)
    if (!(g[static_cast<std::size_t>(k) + 1] > g[static_cast<std::size_t>(k)]))
      throw InvalidSchedule("StaircaseSchedule: gaps must strictly increase");
  return g;
}

ProtocolTrace reset_work(const StaircaseSchedule& schedule,
                         const Temperature& temp) {
  const auto g = schedule.gaps();
  ProtocolTrace trace;
  trace.steps.reserve(g.size() - 1);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    ProtocolStep s;
    s.gap_before = g[k];
    s.gap_after = g[k + 1];
    s.occupation = excited_occupation(g[k], temp);
    // quench-then-thermalize: the raise costs p1(g_k) dg, then the bath
    // takes (p1(g_{k+1}) - p1(g_k)) g_{k+1}
    s.work = s.occupation * (g[k + 1] - g[k]);
    s.heat = (excited_occupation(g[k + 1], temp) - s.occupation) * g[k + 1];
    trace.steps.push_back(s);
    trace.work_total += s.work;
    trace.heat_total += s.heat;
  }
  const double p_end = excited_occupation(schedule.g_max, temp);
  trace.delta_u = p_end * schedule.g_max;  // started at U = 0 (gap 0)
  trace.residual_occupation = p_end;
  trace.residual_energy_drop = p_end * schedule.g_max;
  return trace;
}

ProtocolTrace withdrawal_work(const StaircaseSchedule& schedule,
                              const Temperature& temp) {
  const auto g = schedule.gaps();
  ProtocolTrace trace;
  trace.steps.reserve(g.size() - 1);
  // The qubit starts pure |0> with |1> already raised to g_max for free
  // (unoccupied), then couples to the bath.  First event: thermalization
  // at the full gap, heat flowing in.
  double p = 0.0;
  for (std::size_t k = g.size() - 1; k > 0; --k) {
    ProtocolStep s;
    s.gap_before = g[k];
    s.gap_after = g[k - 1];
    const double p_thermal = excited_occupation(g[k], temp);
    s.heat = (p_thermal - p) * g[k];  // thermalize before the lowering
    p = p_thermal;
    s.occupation = p;
    s.work = -p * (g[k] - g[k - 1]);  // lowering extracts work
    trace.steps.push_back(s);
    trace.work_total += s.work;
    trace.heat_total += s.heat;
  }
  // final thermalization at gap 0 exchanges no energy
  trace.delta_u = 0.0;
  trace.residual_occupation = 0.0;
  trace.residual_energy_drop = 0.0;
  return trace;
}

}  // namespace bittery
