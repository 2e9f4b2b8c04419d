#pragma once

#include <cstdint>

#include "bittery/model.hpp"
#include "bittery/shell.hpp"

namespace bittery {

// Single-shot extraction scheme.
//  Deterministic: fixed work, failure probability eps.
//  Bounded: work fluctuates over a window of width c (in reset-qubit
//           units, c = m2 - m1 >= 0), failure probability eps.
//  Guaranteed: work guaranteed to be exceeded except with probability eps.
struct SchemeSpec {
  enum class Kind { Deterministic, Bounded, Guaranteed };

  static SchemeSpec deterministic(double epsilon);
  static SchemeSpec bounded(double epsilon, std::int64_t c);
  static SchemeSpec guaranteed(double epsilon);

  Kind kind = Kind::Deterministic;
  double epsilon = 0.0;
  std::int64_t c = 0;  // Bounded only
};

struct ExtractionResult {
  double w_max = 0.0;      // F_min_eps(rho) - F(tau)
  double f_min = 0.0;      // smooth min-free energy
  double f_thermal = 0.0;  // -kT ln Z
  std::int64_t k_star = 0;  // max resettable qubits, floor(w_max / kT ln2)
  bool exact_multiple = false;  // w_max lands on a kT ln2 multiple
  SchemeSpec scheme;
  double rank_bound_log = 0.0;  // ln(2^m_eff Z_S), M_B(E) factored out
};

// F_min_eps(rho) = -kT ln sum h_eps(E_S,g_S) exp(-beta E_S), with h_eps
// from the greedy truncation of the p*exp(+beta E_S)-ordered spectrum.
// Independent of the bath and of the shell energy.
double smooth_min_free_energy(const DiagonalState& state,
                              const SystemSpec& system, double epsilon,
                              const Temperature& temp);

// Maximum extractable work for any of the three schemes.  The value is
// scheme independent by construction (one shared code path); only the
// recorded rank bound differs.
ExtractionResult max_work(const DiagonalState& state, const SystemSpec& system,
                          const SchemeSpec& scheme, const Temperature& temp,
                          std::int64_t cells);

// ln(2^m_eff Z_S) with m_eff = m (Deterministic), m1 (Bounded, the
// min over m1 <= l <= m2 collapses to m1), 0 (Guaranteed).
double scheme_rank_bound(const SchemeSpec& scheme, std::int64_t m_param,
                         const SystemSpec& system, const Temperature& temp,
                         std::int64_t cells);

}  // namespace bittery
