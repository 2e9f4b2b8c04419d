#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bittery/errors.hpp"
#include "bittery/extraction.hpp"

namespace bittery::oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational rat_pow(const Rational& base, std::int64_t exponent);
// Largest k >= 0 with 2^k <= ratio; requires ratio >= 1.
std::int64_t floor_log2(const Rational& ratio);

// Small explicit instance on an integer energy grid.  boltzmann_q is the
// exact Boltzmann factor per grid step, q = exp(-beta * spacing); all
// thermal weights are then powers of q and stay rational.
struct OracleLevel {
  std::int64_t energy = 0;
  std::int64_t multiplicity = 1;
};

struct OracleInstance {
  std::vector<OracleLevel> system;
  std::vector<std::vector<Rational>> state;  // weights[level][g], sum = 1
  std::vector<OracleLevel> bath;
  Rational boltzmann_q{1, 2};
  std::int64_t cells = 1;
  std::int64_t dimension_cap = 4096;
};

// Fully expanded energy shell: one entry per basis state of the shell,
// exact rational values.  dimension counts every basis state at the
// total energy, including zero-weight ones.
struct ShellEntry {
  Rational value;
  std::int32_t level = -1;  // -1: system level absent from the state support
  std::int32_t g_s = 0;
  std::int32_t bath_index = 0;
  std::int32_t g_b = 0;
  std::int32_t g_a = 0;
};

struct ExplicitShell {
  std::vector<ShellEntry> entries;
  std::int64_t total_energy = 0;
  std::int64_t dimension = 0;     // == entries.size()
  std::int64_t sb_dimension = 0;  // shell dimension of system (x) bath
  Rational trace;                 // exact shell probability weight
};

struct SchurReport {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double worst_violation = 0.0;
};

// Exact rational expansion of the shell of rho_S (x) tau_B (x) rho_A at
// the given total energy.  Throws EmptyShell / DimensionCap.
ExplicitShell explicit_shell(const OracleInstance& instance,
                             std::int64_t total_energy);

// Schur-Horn feasibility: a diagonal is reachable from the shell by an
// energy-conserving unitary iff the shell eigenvalues majorize it.
// Exact rational partial sums; throws TraceMismatch.
bool reachable(const std::vector<Rational>& diag_target,
               const ExplicitShell& shell);

// Total energies for which the bath window covers every system level
// (E - E_S on the bath grid for all E_S).  Edge shells, where the finite
// bath window truncates the degeneracy ladder, are excluded.
std::vector<std::int64_t> bulk_shell_energies(const OracleInstance& instance);

// Largest k = n - m such that the scheme's final bittery state with m
// mixed cells, with failure weight eps free, is reachable in every bulk
// shell simultaneously.  All three schemes use the degenerate work
// distribution concentrated on the work-maximizing index, which is the
// optimum (more mixed branches only loosen the majorization constraint).
std::int64_t brute_force_max_reset(const OracleInstance& instance,
                                   const Rational& epsilon,
                                   SchemeSpec::Kind scheme);

// Feasibility of a specific final mixture sum_l p_a[l] xi^(l) (indices
// from m1) with failure weight eps, tested per bulk shell.
bool feasible_with_distribution(const OracleInstance& instance,
                                const Rational& epsilon, std::int64_t m1,
                                const std::vector<Rational>& p_a);

// Exact rational replica of the smooth min-free energy route:
// k = floor(log2(Z_S / sum_h)) with h from greedy truncation at exact
// rational eps, clamped to the cell count.
std::int64_t exact_k_star(const OracleInstance& instance,
                          const Rational& epsilon);
Rational exact_rank_ratio(const OracleInstance& instance,
                          const Rational& epsilon);

// Exact thermal state of the instance's system at the instance's q.
std::vector<std::vector<Rational>> thermal_weights(const OracleInstance&);

// Diagonal after permuting the shell basis: entry i takes the value of
// entry perm[i].
std::vector<Rational> permuted_diagonal(const ExplicitShell& shell,
                                        const std::vector<std::size_t>& perm);
std::vector<std::size_t> random_shell_permutation(const ExplicitShell& shell,
                                                  std::mt19937_64& rng);

// Marginal on the system of a shell diagonal: weight per (level, g_s),
// indexed over the instance's system levels.
std::vector<std::vector<Rational>> system_marginal(
    const OracleInstance& instance, const ExplicitShell& shell,
    const std::vector<Rational>& diagonal);

// Exact (value, count) classes of a diagonal; equality of these classes
// certifies that the shell entropy, and with it F^E = E - kT S^E, is
// unchanged.
std::vector<std::pair<Rational, std::int64_t>> value_classes(
    const std::vector<Rational>& diagonal);

// Random-conjugation check of the majorization direction: eigenvalues
// majorize the diagonal for Q diag(lambda) Q^T with random orthogonal Q.
SchurReport schur_fuzz(int dimension, std::int64_t trials,
                       std::uint64_t seed);

}  // namespace bittery::oracle
