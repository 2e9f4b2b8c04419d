#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bittery/model.hpp"

namespace bittery {

// Identifies the system block a spectrum entry came from.
struct BlockTag {
  std::int32_t level = 0;  // system level index
  std::int32_t sub = 0;    // sub-block index within the level
  friend bool operator==(const BlockTag&, const BlockTag&) = default;
};

struct SpectrumBlock {
  double log_value = 0.0;         // log of the (common) eigenvalue
  double log_multiplicity = 0.0;  // log of the block dimension
  BlockTag tag;
};

// Sorted (non-increasing by value) block representation of a diagonal
// spectrum.  Multiplicities live in the log domain because 2^n M_B(E)
// overflows anything fixed-width.  Shells are kept subnormalized: the
// trace is the probability of the shell, not 1.
class BlockSpectrum {
 public:
  struct AnalyticInfo {
    double beta = 0.0;
    double log_mb_at_total = 0.0;  // log M_B(E) at the shell's total energy
    std::int64_t cells = 0;        // bittery cell count folded into blocks
  };

  BlockSpectrum(std::vector<SpectrumBlock> blocks,
                std::optional<AnalyticInfo> info = std::nullopt);

  const std::vector<SpectrumBlock>& blocks() const { return blocks_; }
  double log_trace() const { return log_trace_; }
  const std::optional<AnalyticInfo>& analytic_info() const { return info_; }

  // Columns: log_value, log_multiplicity, tag ("level:sub").
  void to_csv(std::ostream& os) const;

 private:
  std::vector<SpectrumBlock> blocks_;
  double log_trace_;
  std::optional<AnalyticInfo> info_;
};

// Indicator assignment from the greedy epsilon-truncation: h[i] is
// parallel to spectrum.blocks().  h is 1 above the cut, 0 below it, and
// fractional (shared uniformly) on at most one tied value class.
struct SmoothingResult {
  std::vector<double> h;
  std::vector<BlockTag> tags;
  double epsilon = 0.0;
  double log_rank = 0.0;
  double trace_kept = 0.0;
  double h_for(BlockTag tag) const;
};

// Spectrum of rho_S (x) tau_B (x) rho_A restricted to the energy shell at
// total energy E.  One block per (level, sub-block) of the state; value
// p * exp(-beta (E - E_S)) / Z_B, multiplicity 2^n * M_B(E - E_S).
// Requires an analytic bath (explicit baths belong to the exact oracle).
BlockSpectrum assemble_shell(const DiagonalState& state,
                             const SystemSpec& system, const BathSpec& bath,
                             const BitterySpec& bittery, double total_energy);

// Greedy truncation keeping the largest values until (1-eps) of the trace
// is covered.  eps == 0 keeps the full support exactly.
SmoothingResult epsilon_truncate(const BlockSpectrum& spec, double epsilon);

// Block-wise majorization check (prefix sums compared at block
// boundaries, never expanding multiplicities).  Both spectra must have
// equal trace within 1e-10.
bool majorizes(const BlockSpectrum& a, const BlockSpectrum& b);

// log rk(r^E_eps).  For spectra assembled from an analytic bath the
// result is cross-checked against the closed form
// n ln2 + ln M_B(E) + ln sum_h exp(-beta E_S) to 1e-12.
double rank_epsilon(const BlockSpectrum& spec, double epsilon);

// Bath-free spectrum whose ordering key is p * exp(+beta E_S) and whose
// block "multiplicity" is count * exp(-beta E_S): exactly the object the
// smooth min-free energy truncates.  Blocks with p == 0 are omitted.
BlockSpectrum system_weight_spectrum(const DiagonalState& state,
                                     const SystemSpec& system,
                                     const Temperature& temp);

}  // namespace bittery
