#include "bittery/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "bittery/extraction.hpp"
#include "bittery/landauer.hpp"
#include "bittery/model.hpp"
#include "bittery/oracle.hpp"
#include "bittery/shell.hpp"
#include "bittery/storage.hpp"

namespace bittery {

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CheckResult pass(std::string name, std::string detail) {
  return {std::move(name), true, std::move(detail)};
}
CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

}  // namespace

CheckResult check_scheme_independence(std::uint64_t seed) {
  const std::string name = "scheme-independence";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(0.25, 1.5);
  std::uniform_real_distribution<double> mass(0.01, 1.0);
  const Temperature temp(1.0);
  const double eps_list[] = {0.0, 0.01, 0.1, 0.3};
  double worst = 0.0;

  for (int trial = 0; trial < 200; ++trial) {
    const int level_count = 1 + static_cast<int>(rng() % 3);
    std::vector<SystemLevel> levels;
    double e = 0.0;
    std::int64_t dim = 0;
    for (int i = 0; i < level_count; ++i) {
      const std::int64_t mult =
          std::min<std::int64_t>(1 + static_cast<std::int64_t>(rng() % 2),
                                 6 - dim - (level_count - 1 - i));
      levels.push_back({e, std::max<std::int64_t>(mult, 1)});
      dim += levels.back().multiplicity;
      e += gap(rng);
    }
    const SystemSpec sys(levels);
    std::vector<std::vector<double>> w(levels.size());
    double total = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      w[i].resize(static_cast<std::size_t>(levels[i].multiplicity));
      for (auto& x : w[i]) {
        x = mass(rng);
        total += x;
      }
    }
    for (auto& row : w)
      for (auto& x : row) x /= total;
    const DiagonalState state = DiagonalState::from_state_weights(sys, w);

    for (double eps : eps_list) {
      const double wd =
          max_work(state, sys, SchemeSpec::deterministic(eps), temp, 8).w_max;
      const double wb =
          max_work(state, sys, SchemeSpec::bounded(eps, 1), temp, 8).w_max;
      const double wg =
          max_work(state, sys, SchemeSpec::guaranteed(eps), temp, 8).w_max;
      const double scale = std::max({1.0, std::abs(wd)});
      const double spread =
          (std::max({wd, wb, wg}) - std::min({wd, wb, wg})) / scale;
      worst = std::max(worst, spread);
      if (spread > 1e-12)
        return fail(name, fmt("trial %d eps=%g spread=%.3e", trial, eps,
                              spread));
    }
  }
  return pass(name, fmt("200 states x 4 eps, worst spread %.3e", worst));
}

CheckResult check_formula_vs_oracle() {
  using oracle::OracleInstance;
  using oracle::OracleLevel;
  using oracle::Rational;
  const std::string name = "formula-vs-oracle";
  const Temperature temp(std::numbers::ln2);

  const std::vector<std::vector<OracleLevel>> systems = {
      {{0, 1}},
      {{0, 2}},
      {{0, 3}},
      {{0, 1}, {1, 1}},
      {{0, 1}, {2, 1}},
      {{0, 1}, {1, 2}},
      {{0, 2}, {1, 1}},
      {{0, 1}, {1, 1}, {2, 1}},
  };
  const std::vector<std::vector<OracleLevel>> baths = {
      {{0, 1}, {1, 2}, {2, 4}},
      {{0, 1}, {1, 2}, {2, 4}, {3, 8}},
  };
  const Rational eps_list[] = {Rational(0), Rational(1, 4), Rational(1, 2)};
  const std::int64_t cell_list[] = {1, 2, 4};

  int instances = 0;
  for (const auto& sys_levels : systems) {
    std::int64_t dim = 0;
    for (const auto& lv : sys_levels) dim += lv.multiplicity;

    // candidate states: thermal, pure per level, two dyadic mixtures
    std::vector<std::vector<std::vector<Rational>>> states;
    {
      OracleInstance probe;
      probe.system = sys_levels;
      states.push_back({});  // placeholder, filled below via thermal_weights
      probe.state.resize(sys_levels.size());
      for (std::size_t i = 0; i < sys_levels.size(); ++i)
        probe.state[i].assign(
            static_cast<std::size_t>(sys_levels[i].multiplicity), Rational(0));
      states[0] = oracle::thermal_weights(probe);
    }
    for (std::size_t j = 0; j < sys_levels.size(); ++j) {
      std::vector<std::vector<Rational>> s(sys_levels.size());
      for (std::size_t i = 0; i < sys_levels.size(); ++i)
        s[i].assign(static_cast<std::size_t>(sys_levels[i].multiplicity),
                    Rational(0));
      s[j][0] = 1;
      states.push_back(std::move(s));
    }
    if (dim > 1) {
      for (const Rational& head : {Rational(1, 2), Rational(3, 4)}) {
        const Rational rest = (1 - head) / Rational(dim - 1);
        std::vector<std::vector<Rational>> s(sys_levels.size());
        bool first = true;
        for (std::size_t i = 0; i < sys_levels.size(); ++i)
          for (std::int64_t g = 0; g < sys_levels[i].multiplicity; ++g) {
            s[i].push_back(first ? head : rest);
            first = false;
          }
        states.push_back(std::move(s));
      }
    }

    // mirror of the instance for the floating-point code path
    std::vector<SystemLevel> fp_levels;
    for (const auto& lv : sys_levels)
      fp_levels.push_back(
          {static_cast<double>(lv.energy), lv.multiplicity});
    const SystemSpec fp_sys(fp_levels);

    for (const auto& state : states) {
      std::vector<std::vector<double>> fp_w(state.size());
      for (std::size_t i = 0; i < state.size(); ++i)
        for (const auto& r : state[i])
          fp_w[i].push_back(static_cast<double>(r));
      const DiagonalState fp_state =
          DiagonalState::from_state_weights(fp_sys, fp_w);

      for (const auto& bath : baths) {
        for (std::int64_t n : cell_list) {
          OracleInstance inst;
          inst.system = sys_levels;
          inst.state = state;
          inst.bath = bath;
          inst.cells = n;
          for (const Rational& eps : eps_list) {
            ++instances;
            const std::int64_t k_oracle = oracle::brute_force_max_reset(
                inst, eps, SchemeSpec::Kind::Deterministic);
            const std::int64_t k_exact = oracle::exact_k_star(inst, eps);
            const std::int64_t k_formula =
                max_work(fp_state, fp_sys,
                         SchemeSpec::deterministic(static_cast<double>(eps)),
                         temp, n)
                    .k_star;
            if (k_oracle != k_exact || k_formula != k_oracle)
              return fail(
                  name,
                  fmt("instance %d: formula=%lld exact=%lld oracle=%lld",
                      instances, static_cast<long long>(k_formula),
                      static_cast<long long>(k_exact),
                      static_cast<long long>(k_oracle)));
          }
        }
      }
    }
  }
  return pass(name, fmt("%d instances, exact agreement", instances));
}

CheckResult check_schur_majorization(std::uint64_t seed) {
  const std::string name = "schur-majorization";
  std::int64_t total = 0;
  for (int d = 2; d <= 6; ++d) {
    const auto report =
        oracle::schur_fuzz(d, 1000, seed ^ static_cast<std::uint64_t>(d));
    total += report.trials;
    if (report.failures != 0)
      return fail(name, fmt("d=%d failures=%lld worst=%.3e", d,
                            static_cast<long long>(report.failures),
                            report.worst_violation));
  }
  return pass(name, fmt("%lld conjugations, zero violations",
                        static_cast<long long>(total)));
}

CheckResult check_landauer_convergence() {
  const std::string name = "landauer-convergence";
  const Temperature temp(1.0);
  const double g_max = 25.0;
  const double limit = quasistatic_reset_work(g_max, temp);

  if (std::abs(limit - std::numbers::ln2) >= 2e-11)
    return fail(name, fmt("finite-gap form off ln2 by %.3e",
                          std::abs(limit - std::numbers::ln2)));

  double prev = 0.0;
  double final_err = 0.0;
  bool have_prev = false;
  for (std::int64_t steps : {12500, 25000, 50000, 100000}) {
    StaircaseSchedule sched{steps, g_max, StaircaseSchedule::Rule::Uniform,
                            1.0};
    const double w = reset_work(sched, temp).work_total;
    if (w < limit)
      return fail(name, fmt("N=%lld: work %.12f below the quasistatic limit",
                            static_cast<long long>(steps), w));
    if (have_prev && !(w < prev))
      return fail(name, fmt("N=%lld: not monotone under doubling",
                            static_cast<long long>(steps)));
    prev = w;
    have_prev = true;
    final_err = w - limit;
  }
  if (final_err > 5e-4)
    return fail(name, fmt("N=1e5 error %.3e exceeds 5e-4", final_err));
  return pass(name, fmt("N=1e5 error %.3e, monotone, closed form %.3e off ln2",
                        final_err, std::abs(limit - std::numbers::ln2)));
}

CheckResult check_additional_work_properties() {
  const std::string name = "additional-work-properties";
  const Temperature temp(1.0);
  const double spacing = 0.3;
  const WeightLadder ladder(spacing, 64, 0.0);
  double prev = -1.0;
  for (int count = 1; count <= 20; ++count) {
    const double w_min = spacing;
    const double w_max = spacing * count;
    const auto aw = weight_additional_work(ladder, w_min, w_max, temp);
    const double scale = std::max(1.0, std::abs(aw.value));
    if (std::abs(aw.value - aw.closed_form) / scale > 1e-12)
      return fail(name, fmt("count=%d closed-form gap %.3e", count,
                            std::abs(aw.value - aw.closed_form)));
    if (count == 1 && aw.value != 0.0)
      return fail(name, "single level must give exactly zero");
    if (count > 1 && !(aw.value > prev))
      return fail(name, fmt("count=%d not strictly increasing", count));
    prev = aw.value;
    // common shift of the window leaves the value bit-identical
    const auto shifted = weight_additional_work(ladder, w_min + 5 * spacing,
                                                w_max + 5 * spacing, temp);
    if (shifted.value != aw.value)
      return fail(name, fmt("count=%d shift changed the value", count));
  }
  return pass(name, "closed form, zero-iff-one-level, monotone, shift-free");
}

CheckResult check_entropy_certificates(std::uint64_t seed) {
  const std::string name = "entropy-certificates";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  const Temperature temp(1.0);
  std::int64_t cases = 0;
  for (std::int64_t n = 1; n <= 10; ++n) {
    const double n_ln2 = static_cast<double>(n) * std::numbers::ln2;
    for (std::int64_t m2 = 0; m2 < n; ++m2) {
      for (std::int64_t m1 = 0; m1 <= m2; ++m1) {
        if ((std::int64_t{1} << (n - m2)) < m2 - m1 + 1) continue;
        const std::int64_t width = m2 - m1 + 1;
        const int draws = width == 1 ? 1 : 100;
        for (int d = 0; d < draws; ++d) {
          std::vector<double> p(static_cast<std::size_t>(width));
          double total = 0.0;
          for (auto& x : p) {
            x = width == 1 ? 1.0 : mass(rng);
            total += x;
          }
          for (auto& x : p) x /= total;
          const auto cert = entropy_change_certificate(
              SchemeSpec::bounded(0.1, width - 1), n, m1, m2, p, temp);
          ++cases;
          if (!cert.sufficient_condition)
            return fail(name, fmt("n=%lld m=[%lld,%lld]: condition flag wrong",
                                  (long long)n, (long long)m1, (long long)m2));
          if (!cert.entropy_decreases_exact || !cert.entropy_decreases)
            return fail(name,
                        fmt("n=%lld m=[%lld,%lld]: entropy did not decrease",
                            (long long)n, (long long)m1, (long long)m2));
          if (cert.success_entropy > cert.chain_middle + 1e-9 ||
              cert.chain_middle > cert.chain_upper + 1e-9 ||
              cert.chain_upper > n_ln2 + 1e-9)
            return fail(name, fmt("n=%lld m=[%lld,%lld]: chain link broken",
                                  (long long)n, (long long)m1, (long long)m2));
          if (width > 1 &&
              !(cert.chain_middle - cert.success_entropy > 1e-12))
            return fail(
                name,
                fmt("n=%lld m=[%lld,%lld]: first link not strict",
                    (long long)n, (long long)m1, (long long)m2));
        }
      }
    }
  }
  return pass(name, fmt("%lld certificates, all links hold",
                        static_cast<long long>(cases)));
}

CheckResult check_shell_free_energy_invariance(std::uint64_t seed) {
  using oracle::OracleInstance;
  using oracle::Rational;
  const std::string name = "shell-free-energy-invariance";
  std::mt19937_64 rng(seed);

  // small shell: enumerate every permutation
  OracleInstance small;
  small.system = {{0, 1}, {1, 1}};
  small.state = {{Rational(1, 2)}, {Rational(1, 2)}};
  small.bath = {{0, 1}, {1, 2}};
  small.cells = 1;
  std::int64_t enumerated = 0;
  for (std::int64_t e : oracle::bulk_shell_energies(small)) {
    const auto shell = oracle::explicit_shell(small, e);
    const auto classes_before = oracle::value_classes(
        [&] {
          std::vector<Rational> v;
          for (const auto& entry : shell.entries) v.push_back(entry.value);
          return v;
        }());
    std::vector<std::size_t> perm(shell.entries.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      const auto diag = oracle::permuted_diagonal(shell, perm);
      if (oracle::value_classes(diag) != classes_before)
        return fail(name, fmt("E=%lld: permutation changed the value classes",
                              static_cast<long long>(e)));
      ++enumerated;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // larger shell: random sample of permutations
  OracleInstance big;
  big.system = {{0, 1}, {1, 2}};
  big.state = {{Rational(1, 2)}, {Rational(3, 8), Rational(1, 8)}};
  big.bath = {{0, 1}, {1, 2}, {2, 4}};
  big.cells = 2;
  std::int64_t sampled = 0;
  for (std::int64_t e : oracle::bulk_shell_energies(big)) {
    const auto shell = oracle::explicit_shell(big, e);
    std::vector<Rational> before;
    for (const auto& entry : shell.entries) before.push_back(entry.value);
    const auto classes_before = oracle::value_classes(before);
    for (int t = 0; t < 200; ++t) {
      const auto perm = oracle::random_shell_permutation(shell, rng);
      const auto diag = oracle::permuted_diagonal(shell, perm);
      if (oracle::value_classes(diag) != classes_before)
        return fail(name, fmt("E=%lld: sampled permutation broke invariance",
                              static_cast<long long>(e)));
      ++sampled;
    }
  }
  return pass(name, fmt("%lld enumerated + %lld sampled permutations",
                        static_cast<long long>(enumerated),
                        static_cast<long long>(sampled)));
}

CheckResult check_thermal_fixed_point(std::uint64_t seed) {
  using oracle::OracleInstance;
  using oracle::Rational;
  const std::string name = "thermal-fixed-point";
  std::mt19937_64 rng(seed);

  const std::vector<std::vector<SystemLevel>> systems = {
      {{0.0, 1}, {1.0, 1}},
      {{0.0, 1}, {1.0, 2}, {2.0, 1}},
      {{0.0, 2}, {1.5, 3}},
  };
  const Temperature temps[] = {Temperature(1.0), Temperature(std::numbers::ln2),
                               Temperature(0.37)};
  for (const auto& levels : systems) {
    for (const auto& temp : temps) {
      const SystemSpec sys(levels);
      const DiagonalState tau = gibbs_state(sys, temp);
      for (const auto scheme :
           {SchemeSpec::deterministic(0.0), SchemeSpec::bounded(0.0, 1),
            SchemeSpec::guaranteed(0.0)}) {
        const auto r = max_work(tau, sys, scheme, temp, 4);
        if (r.w_max != 0.0 || r.k_star != 0)
          return fail(name, fmt("w_max=%.17g k=%lld at thermal input", r.w_max,
                                static_cast<long long>(r.k_star)));
      }
    }
  }

  OracleInstance inst;
  inst.system = {{0, 1}, {1, 2}};
  inst.state.resize(2);
  inst.bath = {{0, 1}, {1, 2}, {2, 4}};
  inst.cells = 2;
  inst.state = oracle::thermal_weights(inst);
  if (oracle::exact_k_star(inst, Rational(0)) != 0 ||
      oracle::brute_force_max_reset(inst, Rational(0),
                                    SchemeSpec::Kind::Deterministic) != 0)
    return fail(name, "oracle found k > 0 at the thermal state");

  const auto marginal_ref = inst.state;
  for (std::int64_t e : oracle::bulk_shell_energies(inst)) {
    const auto shell = oracle::explicit_shell(inst, e);
    Rational shell_trace = shell.trace;
    for (int t = 0; t < 20; ++t) {
      const auto perm = oracle::random_shell_permutation(shell, rng);
      const auto diag = oracle::permuted_diagonal(shell, perm);
      const auto marg = oracle::system_marginal(inst, shell, diag);
      for (std::size_t i = 0; i < marg.size(); ++i)
        for (std::size_t g = 0; g < marg[i].size(); ++g)
          if (marg[i][g] != marginal_ref[i][g] * shell_trace)
            return fail(name,
                        fmt("E=%lld: permuted marginal moved",
                            static_cast<long long>(e)));
    }
  }
  return pass(name, "w_max = 0 bit-exact, oracle k = 0, marginal pinned");
}

CheckResult check_pure_state_smoothing() {
  using oracle::OracleInstance;
  using oracle::Rational;
  const std::string name = "pure-state-smoothing";
  const Temperature temp(1.0);
  const SystemSpec sys({{0.0, 1}, {1.0, 1}, {2.0, 1}});
  double worst = 0.0;
  for (std::size_t level = 0; level < 3; ++level) {
    const DiagonalState pure = DiagonalState::pure(sys, level);
    const double e0 = sys.levels()[level].energy;
    for (double eps = 0.01; eps < 0.95; eps += 0.0890) {
      const double f = smooth_min_free_energy(pure, sys, eps, temp);
      const double expected = e0 + temp.kT() * std::log(1.0 / (1.0 - eps));
      const double err =
          std::abs(f - expected) / std::max(1.0, std::abs(expected));
      worst = std::max(worst, err);
      if (err > 1e-12)
        return fail(name, fmt("level %zu eps=%.3f err=%.3e", level, eps, err));
    }
  }

  // exact rational cross-check of the same truncation rule
  OracleInstance inst;
  inst.system = {{0, 1}, {1, 1}, {2, 1}};
  inst.bath = {{0, 1}, {1, 2}, {2, 4}};
  inst.cells = 4;
  const Rational z_s = Rational(7, 4);  // 1 + 1/2 + 1/4 at q = 1/2
  for (std::int64_t level = 0; level < 3; ++level) {
    inst.state = {{Rational(0)}, {Rational(0)}, {Rational(0)}};
    inst.state[static_cast<std::size_t>(level)][0] = 1;
    for (const Rational& eps : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
      const Rational expected =
          z_s * oracle::rat_pow(Rational(2), level) / (1 - eps);
      if (oracle::exact_rank_ratio(inst, eps) != expected)
        return fail(name, fmt("rational ratio mismatch at level %lld",
                              static_cast<long long>(level)));
    }
  }
  return pass(name, fmt("worst relative error %.3e, rational form exact",
                        worst));
}

std::vector<CheckResult> verify_all(std::uint64_t seed) {
  return {
      check_scheme_independence(seed),
      check_formula_vs_oracle(),
      check_schur_majorization(seed),
      check_landauer_convergence(),
      check_additional_work_properties(),
      check_entropy_certificates(seed),
      check_shell_free_energy_invariance(seed),
      check_thermal_fixed_point(seed),
      check_pure_state_smoothing(),
  };
}

}  // namespace bittery
