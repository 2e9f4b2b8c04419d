#include "bittery/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bittery::oracle {

namespace {

BigInt pow2(std::int64_t k) { return BigInt(1) << k; }

void validate(const OracleInstance& inst) {
  if (inst.system.empty()) throw InvalidSpec("oracle: empty system");
  if (inst.bath.empty()) throw InvalidSpec("oracle: empty bath");
  if (inst.cells < 0) throw InvalidSpec("oracle: negative cell count");
  if (!(inst.boltzmann_q > 0) || !(inst.boltzmann_q < 1))
    throw InvalidSpec("oracle: boltzmann_q must lie in (0,1)");
  if (inst.state.size() != inst.system.size())
    throw InvalidSpec("oracle: state/system level mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < inst.state.size(); ++i) {
    if (static_cast<std::int64_t>(inst.state[i].size()) !=
        inst.system[i].multiplicity)
      throw InvalidSpec("oracle: state/system degeneracy mismatch");
    for (const auto& w : inst.state[i]) {
      if (w < 0) throw InvalidSpec("oracle: negative state weight");
      total += w;
    }
  }
  if (total != 1) throw InvalidSpec("oracle: state must sum to exactly 1");
}

Rational bath_partition(const OracleInstance& inst) {
  Rational z = 0;
  for (const auto& lv : inst.bath)
    z += Rational(lv.multiplicity) * rat_pow(inst.boltzmann_q, lv.energy);
  return z;
}

const OracleLevel* bath_level_at(const OracleInstance& inst,
                                 std::int64_t energy) {
  for (const auto& lv : inst.bath)
    if (lv.energy == energy) return &lv;
  return nullptr;
}

}  // namespace

Rational rat_pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) return 1 / rat_pow(base, -exponent);
  Rational r = 1, b = base;
  std::int64_t e = exponent;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::int64_t floor_log2(const Rational& ratio) {
  if (ratio < 1) throw InvalidRange("floor_log2: ratio must be >= 1");
  std::int64_t k = 0;
  Rational p = 2;
  while (p <= ratio) {
    ++k;
    p *= 2;
  }
  return k;
}

ExplicitShell explicit_shell(const OracleInstance& inst,
                             std::int64_t total_energy) {
  validate(inst);
  const Rational z_b = bath_partition(inst);
  const BigInt two_n = pow2(inst.cells);

  // dimension check before expanding anything
  BigInt dim = 0;
  BigInt sb_dim = 0;
  for (const auto& lv : inst.system) {
    const OracleLevel* b = bath_level_at(inst, total_energy - lv.energy);
    if (b == nullptr) continue;
    sb_dim += BigInt(lv.multiplicity) * b->multiplicity;
  }
  if (sb_dim == 0)
    throw EmptyShell("explicit_shell: no (E_S, E_B) pair realizes E");
  dim = sb_dim * two_n;
  if (dim > inst.dimension_cap)
    throw DimensionCap("explicit_shell: shell dimension exceeds the cap");

  ExplicitShell shell;
  shell.total_energy = total_energy;
  shell.dimension = static_cast<std::int64_t>(dim);
  shell.sb_dimension = static_cast<std::int64_t>(sb_dim);
  shell.entries.reserve(static_cast<std::size_t>(shell.dimension));
  shell.trace = 0;

  for (std::size_t i = 0; i < inst.system.size(); ++i) {
    const auto& lv = inst.system[i];
    const std::int64_t e_b = total_energy - lv.energy;
    const OracleLevel* b = bath_level_at(inst, e_b);
    if (b == nullptr) continue;
    const Rational bath_factor = rat_pow(inst.boltzmann_q, e_b) / z_b;
    for (std::int64_t g_s = 0; g_s < lv.multiplicity; ++g_s) {
      const Rational w = inst.state[i][static_cast<std::size_t>(g_s)];
      const Rational value = w * bath_factor / Rational(two_n);
      for (std::int64_t g_b = 0; g_b < b->multiplicity; ++g_b) {
        for (BigInt g_a = 0; g_a < two_n; ++g_a) {
          ShellEntry e;
          e.value = value;
          e.level = static_cast<std::int32_t>(i);
          e.g_s = static_cast<std::int32_t>(g_s);
          e.bath_index =
              static_cast<std::int32_t>(b - inst.bath.data());
          e.g_b = static_cast<std::int32_t>(g_b);
          e.g_a = static_cast<std::int32_t>(g_a);
          shell.entries.push_back(std::move(e));
          shell.trace += value;
        }
      }
    }
  }
  return shell;
}

bool reachable(const std::vector<Rational>& diag_target,
               const ExplicitShell& shell) {
  if (diag_target.size() != shell.entries.size())
    throw TraceMismatch("reachable: dimension mismatch");
  Rational target_trace = 0;
  for (const auto& v : diag_target) {
    if (v < 0) throw InvalidSpec("reachable: negative target entry");
    target_trace += v;
  }
  if (target_trace != shell.trace)
    throw TraceMismatch("reachable: traces differ");

  std::vector<Rational> a;
  a.reserve(shell.entries.size());
  for (const auto& e : shell.entries) a.push_back(e.value);
  std::vector<Rational> b = diag_target;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  Rational pa = 0, pb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa += a[i];
    pb += b[i];
    if (pa < pb) return false;
  }
  return true;
}

std::vector<std::int64_t> bulk_shell_energies(const OracleInstance& inst) {
  std::set<std::int64_t> bath_energies;
  for (const auto& lv : inst.bath) bath_energies.insert(lv.energy);
  std::set<std::int64_t> candidates;
  for (const auto& s : inst.system)
    for (const auto& b : inst.bath) candidates.insert(s.energy + b.energy);
  std::vector<std::int64_t> bulk;
  for (std::int64_t e : candidates) {
    bool ok = true;
    for (const auto& s : inst.system)
      if (!bath_energies.contains(e - s.energy)) {
        ok = false;
        break;
      }
    if (ok) bulk.push_back(e);
  }
  return bulk;
}

namespace {

// Target diagonal for a success mixture sum_l p_a[l] xi^(m1+l) with the
// remaining eps of the trace free.  The success part occupies
// sb_dim * 2^l_max slots in nested rings; the leftover is spread flat
// over whatever slots remain (the water level never needs to rise above
// the smallest ring value in the cases the search visits).
bool shell_feasible(const ExplicitShell& shell, const Rational& eps,
                    std::int64_t m1, const std::vector<Rational>& p_a,
                    std::int64_t cells) {
  const Rational t = shell.trace;
  if (t == 0) return true;
  const std::int64_t d = shell.dimension;
  const Rational d_sb = shell.sb_dimension;
  const Rational uniform = t / d;

  struct RingSpec {
    Rational value;
    std::int64_t count = 0;
  };
  std::vector<std::int64_t> ls;
  for (std::size_t i = 0; i < p_a.size(); ++i)
    if (p_a[i] > 0) ls.push_back(m1 + static_cast<std::int64_t>(i));
  if (ls.empty()) throw InvalidSpec("shell_feasible: empty distribution");

  std::vector<RingSpec> rings;
  std::int64_t slots_used = 0;
  Rational mass_used = 0;
  for (std::size_t j = 0; j < ls.size(); ++j) {
    Rational tail = 0;
    for (std::size_t i = j; i < ls.size(); ++i)
      tail += p_a[static_cast<std::size_t>(ls[i] - m1)] /
              Rational(pow2(ls[i]));
    RingSpec r;
    r.value = (1 - eps) * (t / d_sb) * tail;
    const BigInt prev = j == 0 ? BigInt(0) : pow2(ls[j - 1]);
    r.count = static_cast<std::int64_t>(
        (pow2(ls[j]) - prev) * shell.sb_dimension);
    rings.push_back(r);
    slots_used += r.count;
    mass_used += r.value * r.count;
  }
  (void)cells;

  // uniform final state dominates the whole profile: always reachable
  bool flat_enough = true;
  for (const auto& r : rings)
    if (r.value > uniform) {
      flat_enough = false;
      break;
    }
  if (flat_enough) return true;

  std::vector<Rational> target;
  target.reserve(static_cast<std::size_t>(d));
  const Rational leftover = t - mass_used;
  if (slots_used < d) {
    const Rational tau = leftover / Rational(d - slots_used);
    for (const auto& r : rings)
      target.insert(target.end(), static_cast<std::size_t>(r.count), r.value);
    target.insert(target.end(), static_cast<std::size_t>(d - slots_used), tau);
  } else {
    // profile covers every slot; overlay the leftover flat
    const Rational tau = leftover / Rational(d);
    for (const auto& r : rings)
      target.insert(target.end(), static_cast<std::size_t>(r.count),
                    r.value + tau);
  }
  return reachable(target, shell);
}

}  // namespace

bool feasible_with_distribution(const OracleInstance& inst,
                                const Rational& epsilon, std::int64_t m1,
                                const std::vector<Rational>& p_a) {
  validate(inst);
  if (!(epsilon >= 0) || !(epsilon < 1))
    throw InvalidRange("feasible_with_distribution: need 0 <= eps < 1");
  if (m1 < 0 ||
      m1 + static_cast<std::int64_t>(p_a.size()) - 1 > inst.cells)
    throw InvalidRange("feasible_with_distribution: index out of range");
  const auto bulk = bulk_shell_energies(inst);
  if (bulk.empty())
    throw EmptyShell("feasible_with_distribution: no bulk shell exists");
  for (std::int64_t e : bulk) {
    const ExplicitShell shell = explicit_shell(inst, e);
    if (!shell_feasible(shell, epsilon, m1, p_a, inst.cells)) return false;
  }
  return true;
}

std::int64_t brute_force_max_reset(const OracleInstance& inst,
                                   const Rational& epsilon,
                                   SchemeSpec::Kind scheme) {
  validate(inst);
  if (!(epsilon >= 0) || !(epsilon < 1))
    throw InvalidRange("brute_force_max_reset: need 0 <= eps < 1");
  const auto bulk = bulk_shell_energies(inst);
  if (bulk.empty())
    throw EmptyShell("brute_force_max_reset: no bulk shell exists");
  std::vector<ExplicitShell> shells;
  shells.reserve(bulk.size());
  for (std::int64_t e : bulk) shells.push_back(explicit_shell(inst, e));

  // All three schemes: the work-maximizing final mixture is the
  // degenerate one on the least-mixed admissible branch (m for
  // Deterministic, m1 for Bounded, the guaranteed level for Guaranteed);
  // any mass pushed to more-mixed branches only relaxes majorization.
  (void)scheme;
  for (std::int64_t k = inst.cells; k >= 1; --k) {
    const std::int64_t m = inst.cells - k;
    bool ok = true;
    for (const auto& shell : shells)
      if (!shell_feasible(shell, epsilon, m, {Rational(1)}, inst.cells)) {
        ok = false;
        break;
      }
    if (ok) return k;
  }
  return 0;  // m = n, nothing reset: the identity protocol
}

Rational exact_rank_ratio(const OracleInstance& inst,
                          const Rational& epsilon) {
  validate(inst);
  if (!(epsilon >= 0) || !(epsilon < 1))
    throw InvalidRange("exact_rank_ratio: need 0 <= eps < 1");
  Rational z_s = 0;
  for (const auto& lv : inst.system)
    z_s += Rational(lv.multiplicity) * rat_pow(inst.boltzmann_q, lv.energy);

  struct Item {
    Rational key;    // w * q^{-E_S}: the shell ordering
    Rational mass;   // w: the kept probability weight
    Rational gibbs;  // q^{E_S}: the rank contribution when kept
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < inst.system.size(); ++i) {
    const Rational qe = rat_pow(inst.boltzmann_q, inst.system[i].energy);
    for (const auto& w : inst.state[i]) {
      if (w == 0) continue;
      items.push_back({w / qe, w, qe});
    }
  }
  if (items.empty())
    throw DegenerateState("exact_rank_ratio: state has empty support");
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.key > b.key; });

  const Rational target = 1 - epsilon;
  Rational acc = 0, sum_h = 0;
  std::size_t i = 0;
  while (i < items.size() && acc < target) {
    std::size_t j = i + 1;
    while (j < items.size() && items[j].key == items[i].key) ++j;
    Rational cmass = 0, cgibbs = 0;
    for (std::size_t k = i; k < j; ++k) {
      cmass += items[k].mass;
      cgibbs += items[k].gibbs;
    }
    if (acc + cmass <= target) {
      sum_h += cgibbs;
      acc += cmass;
    } else {
      sum_h += (target - acc) / cmass * cgibbs;
      acc = target;
    }
    i = j;
  }
  return z_s / sum_h;
}

std::int64_t exact_k_star(const OracleInstance& inst,
                          const Rational& epsilon) {
  const std::int64_t k = floor_log2(exact_rank_ratio(inst, epsilon));
  return std::min(k, inst.cells);
}

std::vector<std::vector<Rational>> thermal_weights(
    const OracleInstance& inst) {
  Rational z_s = 0;
  for (const auto& lv : inst.system)
    z_s += Rational(lv.multiplicity) * rat_pow(inst.boltzmann_q, lv.energy);
  std::vector<std::vector<Rational>> w(inst.system.size());
  for (std::size_t i = 0; i < inst.system.size(); ++i)
    w[i].assign(static_cast<std::size_t>(inst.system[i].multiplicity),
                rat_pow(inst.boltzmann_q, inst.system[i].energy) / z_s);
  return w;
}

std::vector<Rational> permuted_diagonal(const ExplicitShell& shell,
                                        const std::vector<std::size_t>& perm) {
  if (perm.size() != shell.entries.size())
    throw InvalidRange("permuted_diagonal: permutation size mismatch");
  std::vector<Rational> out(perm.size());
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || seen[perm[i]])
      throw InvalidRange("permuted_diagonal: not a permutation");
    seen[perm[i]] = true;
    out[i] = shell.entries[perm[i]].value;
  }
  return out;
}

std::vector<std::size_t> random_shell_permutation(const ExplicitShell& shell,
                                                  std::mt19937_64& rng) {
  std::vector<std::size_t> perm(shell.entries.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

std::vector<std::vector<Rational>> system_marginal(
    const OracleInstance& inst, const ExplicitShell& shell,
    const std::vector<Rational>& diagonal) {
  if (diagonal.size() != shell.entries.size())
    throw InvalidRange("system_marginal: size mismatch");
  std::vector<std::vector<Rational>> marg(inst.system.size());
  for (std::size_t i = 0; i < inst.system.size(); ++i)
    marg[i].assign(static_cast<std::size_t>(inst.system[i].multiplicity),
                   Rational(0));
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    const auto& e = shell.entries[i];
    marg[static_cast<std::size_t>(e.level)]
        [static_cast<std::size_t>(e.g_s)] += diagonal[i];
  }
  return marg;
}

std::vector<std::pair<Rational, std::int64_t>> value_classes(
    const std::vector<Rational>& diagonal) {
  std::vector<Rational> sorted = diagonal;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<std::pair<Rational, std::int64_t>> classes;
  for (const auto& v : sorted) {
    if (!classes.empty() && classes.back().first == v)
      ++classes.back().second;
    else
      classes.emplace_back(v, 1);
  }
  return classes;
}

SchurReport schur_fuzz(int dimension, std::int64_t trials,
                       std::uint64_t seed) {
  if (dimension < 1 || dimension > 8)
    throw InvalidRange("schur_fuzz: dimension must be in [1, 8]");
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.01, 1.0);
  const auto d = static_cast<std::size_t>(dimension);

  SchurReport report;
  report.trials = trials;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::vector<double> lambda(d);
    for (auto& x : lambda) x = uni(rng);

    // random orthogonal matrix via modified Gram-Schmidt on a Gaussian
    std::vector<std::vector<double>> q(d, std::vector<double>(d));
    for (auto& row : q)
      for (auto& x : row) x = gauss(rng);
    bool degenerate = false;
    for (std::size_t i = 0; i < d && !degenerate; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += q[i][k] * q[j][k];
        for (std::size_t k = 0; k < d; ++k) q[i][k] -= dot * q[j][k];
      }
      double norm = 0.0;
      for (std::size_t k = 0; k < d; ++k) norm += q[i][k] * q[i][k];
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t k = 0; k < d; ++k) q[i][k] /= norm;
    }
    if (degenerate) {
      --trial;  // resample; astronomically rare
      continue;
    }

    // diag(Q diag(lambda) Q^T)_i = sum_k Q_ik^2 lambda_k
    std::vector<double> diag(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        diag[i] += q[i][k] * q[i][k] * lambda[k];

    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    std::sort(diag.begin(), diag.end(), std::greater<>());
    double pl = 0.0, pd = 0.0;
    bool fail = false;
    for (std::size_t i = 0; i < d; ++i) {
      pl += lambda[i];
      pd += diag[i];
      if (pl < pd - kTol) {
        fail = true;
        report.worst_violation =
            std::max(report.worst_violation, pd - pl);
      }
    }
    if (fail) ++report.failures;
  }
  return report;
}

}  // namespace bittery::oracle
