#pragma once

#include <cstdint>
#include <vector>

#include "bittery/extraction.hpp"
#include "bittery/model.hpp"

namespace bittery {

// Exact diagonal description of an n-cell bittery state.  A branch with
// mixed_cells = m is xi^(m) = 2^-m * I_{2^m} (x) |0><0|^(n-m); the first
// m qubits are the mixed ones by convention.  mixed_cells = n is the
// initial state rho_A.
class BitteryState {
 public:
  struct Branch {
    double probability = 0.0;
    std::int64_t mixed_cells = 0;
  };
  // Distinct diagonal value classes over the nested supports; at most
  // (#branches + 1) of them, never 2^n entries.
  struct Ring {
    double log_value = 0.0;  // per-string probability
    double log_count = 0.0;  // number of strings in the ring
  };

  static BitteryState pure_stack(std::int64_t n, std::int64_t mixed_cells);
  static BitteryState initial(std::int64_t n);
  static BitteryState mixture(std::int64_t n, std::vector<Branch> branches);

  std::int64_t cells() const { return n_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::vector<Ring> rings() const;
  std::int64_t support_log2() const;  // largest mixed_cells with p > 0

 private:
  BitteryState(std::int64_t n, std::vector<Branch> branches);
  std::int64_t n_ = 0;
  std::vector<Branch> branches_;  // merged, sorted by mixed_cells
};

// Energy/entropy/free-energy bookkeeping for a storage transition.
// delta_F = delta_E - kT*delta_S identically; the heat-like part is
// kT*delta_S when the entropy grew, zero otherwise.
struct StorageLedger {
  double delta_E = 0.0;
  double delta_S = 0.0;  // nats
  double delta_F = 0.0;
  double heat_like = 0.0;
  static StorageLedger make(double delta_E, double delta_S,
                            const Temperature& temp);
};

// Work distribution of a discrete weight transition from a single level,
// conditioned on success: P_W(w) != 0 only for w_min <= w <= w_max with
// w_min > 0, probabilities summing to 1.
struct WeightTransition {
  double initial_level = 0.0;
  std::vector<std::pair<double, double>> distribution;  // (w, probability)
};

struct EntropyCertificate {
  StorageLedger ledger;        // success-branch deltas, delta_E = 0
  bool entropy_decreases = false;    // delta_S_A < 0
  bool entropy_decreases_exact = false;  // via the support count, no floats
  bool sufficient_condition = false;     // n - m2 >= log2(m2 - m1 + 1)
  double success_entropy = 0.0;          // S of the success mixture, nats
  double chain_middle = 0.0;  // sum P(l) [l ln2 - ln P(l)]
  double chain_upper = 0.0;   // ln(m2-m1+1) + m2 ln2
};

struct AdditionalWork {
  double value = 0.0;        // kT ln sum_{w} exp(-beta (w - w_min))
  double closed_form = 0.0;  // geometric-series form, cross-check
};

// Final bittery state for a scheme.  Deterministic: eps rho_A +
// (1-eps) xi^(m).  Bounded/Guaranteed: eps rho_A + (1-eps) sum_l P(l)
// xi^(l) with P supported on [m1, m2] (Guaranteed is the m1 = 0 special
// case).  P is indexed from m1.
BitteryState final_bittery_state(const SchemeSpec& scheme, std::int64_t n,
                                 std::int64_t m);
BitteryState final_bittery_state(const SchemeSpec& scheme, std::int64_t n,
                                 std::int64_t m1, std::int64_t m2,
                                 const std::vector<double>& p_a);

// Exact diagonal von Neumann entropy in nats, computed over the ring
// structure (works for n in the thousands).
double bittery_entropy(const BitteryState& state);

// Success-branch entropy change certificate.  Deterministic schemes pass
// m1 == m2 == m with p_a = {1}.
EntropyCertificate entropy_change_certificate(const SchemeSpec& scheme,
                                              std::int64_t n, std::int64_t m1,
                                              std::int64_t m2,
                                              const std::vector<double>& p_a,
                                              const Temperature& temp);

// W^(add) for a weight transition window [w_min, w_max] on the ladder
// grid: depends only on the spacing and the step count.
AdditionalWork weight_additional_work(const WeightLadder& ladder, double w_min,
                                      double w_max, const Temperature& temp);

// First-law ledger of a weight transition from a pure initial level.
StorageLedger weight_ledger(const WeightTransition& transition,
                            const Temperature& temp);

}  // namespace bittery
