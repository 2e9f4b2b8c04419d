#pragma once

#include <cstdint>
#include <vector>

#include "bittery/errors.hpp"

namespace bittery {

// Inverse temperature beta = 1/kT, strictly positive and finite.
// Energies elsewhere are in whatever unit makes beta*energy dimensionless;
// the CLI defaults to kT = 1.
class Temperature {
 public:
  explicit Temperature(double beta);
  static Temperature from_kT(double kT);
  double beta() const { return beta_; }
  double kT() const { return 1.0 / beta_; }

 private:
  double beta_;
};

struct SystemLevel {
  double energy = 0.0;
  std::int64_t multiplicity = 1;
};

// Finite system Hamiltonian: strictly increasing energies, minimum energy
// exactly zero, positive multiplicities.
class SystemSpec {
 public:
  explicit SystemSpec(std::vector<SystemLevel> levels);
  const std::vector<SystemLevel>& levels() const { return levels_; }
  std::size_t level_count() const { return levels_.size(); }
  std::int64_t dimension() const;
  double max_energy() const { return levels_.back().energy; }

 private:
  std::vector<SystemLevel> levels_;
};

// Diagonal density operator over (level, degeneracy) blocks of a
// SystemSpec.  Runs of equal weight inside a level are kept as sub-blocks
// and never expanded, so fully degenerate levels stay O(1).
class DiagonalState {
 public:
  struct SubBlock {
    double weight = 0.0;  // weight per basis state
    std::int64_t count = 0;
  };

  // Uniform within each level; totals[i] is the total probability of level i.
  static DiagonalState from_level_totals(const SystemSpec& system,
                                         const std::vector<double>& totals);
  // One weight per basis state, w[level][g].
  static DiagonalState from_state_weights(
      const SystemSpec& system, const std::vector<std::vector<double>>& w);
  // All probability on one basis state of the given level.
  static DiagonalState pure(const SystemSpec& system, std::size_t level);

  const std::vector<std::vector<SubBlock>>& blocks() const { return blocks_; }
  double level_total(std::size_t level) const;
  std::size_t level_count() const { return blocks_.size(); }

 private:
  explicit DiagonalState(std::vector<std::vector<SubBlock>> blocks);
  std::vector<std::vector<SubBlock>> blocks_;
};

// Heat bath description.  The Analytic variant realizes the exponential
// degeneracy M_B(E) = exp(ref + beta*E) exactly on a grid of `levels`
// energies spaced by `spacing`, with beta = ln(base)/spacing.  The
// Explicit variant lists levels outright and is consumed only by the
// exact oracle.
class BathSpec {
 public:
  struct ExplicitLevel {
    double energy = 0.0;
    std::int64_t multiplicity = 1;
  };

  static BathSpec analytic(int base, double spacing, std::int64_t levels,
                           double ref_log_multiplicity = 0.0);
  static BathSpec explicit_levels(std::vector<ExplicitLevel> levels);

  bool is_analytic() const { return analytic_; }
  double beta() const;  // analytic only: ln(base)/spacing
  double spacing() const;
  int base() const;
  std::int64_t level_count() const;
  double ref_log_multiplicity() const;
  // Analytic grid: log M_B at grid index i is ref + i*ln(base), so the
  // recursion M_B(E + spacing) = base * M_B(E) holds exactly.
  double log_multiplicity_at(std::int64_t index) const;
  // Maps an energy to its grid index; throws IncommensurateEnergy if the
  // energy is off the grid or outside the represented range.
  std::int64_t grid_index(double energy) const;
  const std::vector<ExplicitLevel>& levels_list() const;

 private:
  BathSpec() = default;
  bool analytic_ = false;
  int base_ = 2;
  double spacing_ = 1.0;
  std::int64_t levels_ = 0;
  double ref_log_mult_ = 0.0;
  std::vector<ExplicitLevel> explicit_;
};

// n degenerate qubit cells at energy zero (H_A = 0).
struct BitterySpec {
  std::int64_t n = 0;
};

// Discrete mechanical work storage: equally spaced ladder of levels.
class WeightLadder {
 public:
  WeightLadder(double spacing, std::int64_t level_count, double origin);
  double spacing() const { return spacing_; }
  std::int64_t level_count() const { return level_count_; }
  double origin() const { return origin_; }
  // w is an energy difference; on-grid means an integer multiple of the
  // spacing (within 1e-9 relative).
  bool difference_on_grid(double w) const;
  std::int64_t difference_index(double w) const;  // throws OffGrid

 private:
  double spacing_;
  std::int64_t level_count_;
  double origin_;
};

double partition_function(const SystemSpec& system, const Temperature& temp);
double log_partition_function(const SystemSpec& system,
                              const Temperature& temp);
// F(tau_S) = -kT ln Z_S
double standard_free_energy(const SystemSpec& system, const Temperature& temp);
// tau_S: p(E,g) = exp(-beta E)/Z_S, stored block-wise.
DiagonalState gibbs_state(const SystemSpec& system, const Temperature& temp);

}  // namespace bittery
