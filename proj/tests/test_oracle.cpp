#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bittery/oracle.hpp"

using namespace bittery;
using oracle::OracleInstance;
using oracle::Rational;

namespace {

OracleInstance two_level(Rational p0, Rational p1, std::int64_t cells = 2) {
  OracleInstance inst;
  inst.system = {{0, 1}, {1, 1}};
  inst.state = {{p0}, {p1}};
  inst.bath = {{0, 1}, {1, 2}, {2, 4}, {3, 8}};
  inst.cells = cells;
  return inst;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(oracle::rat_pow(Rational(1, 2), 3) == Rational(1, 8));
  CHECK(oracle::rat_pow(Rational(1, 2), -2) == Rational(4));
  CHECK(oracle::rat_pow(Rational(5), 0) == Rational(1));
  CHECK(oracle::floor_log2(Rational(1)) == 0);
  CHECK(oracle::floor_log2(Rational(2)) == 1);
  CHECK(oracle::floor_log2(Rational(7, 2)) == 1);
  CHECK(oracle::floor_log2(Rational(4)) == 2);
  CHECK_THROWS_AS(oracle::floor_log2(Rational(1, 2)), InvalidRange);
}

TEST_CASE("explicit shell expansion") {
  OracleInstance inst;
  inst.system = {{0, 1}};
  inst.state = {{Rational(1)}};
  inst.bath = {{0, 1}};
  inst.cells = 1;
  const auto shell = oracle::explicit_shell(inst, 0);
  REQUIRE(shell.dimension == 2);
  CHECK(shell.entries[0].value == Rational(1, 2));
  CHECK(shell.entries[1].value == Rational(1, 2));
  CHECK(shell.trace == Rational(1));
  CHECK_THROWS_AS(oracle::explicit_shell(inst, 5), EmptyShell);
}

TEST_CASE("instance validation") {
  auto inst = two_level(Rational(1, 2), Rational(1, 2));
  inst.state[0][0] = Rational(1, 3);  // no longer sums to 1
  CHECK_THROWS_AS(oracle::explicit_shell(inst, 1), InvalidSpec);
  auto big = two_level(Rational(1, 2), Rational(1, 2));
  big.dimension_cap = 4;
  CHECK_THROWS_AS(oracle::explicit_shell(big, 2), DimensionCap);
}

TEST_CASE("reachability is exact majorization") {
  auto inst = two_level(Rational(1, 2), Rational(1, 2), 0);
  inst.bath = {{0, 3}, {1, 2}};
  const auto shell = oracle::explicit_shell(inst, 1);
  // shell values and trace
  std::vector<Rational> same;
  for (const auto& e : shell.entries) same.push_back(e.value);
  CHECK(oracle::reachable(same, shell));

  std::vector<Rational> uniform(same.size(), shell.trace / same.size());
  CHECK(oracle::reachable(uniform, shell));

  // concentrate everything on one entry: needs more than the top value
  std::vector<Rational> peak(same.size(), Rational(0));
  peak[0] = shell.trace;
  CHECK(!oracle::reachable(peak, shell));

  std::vector<Rational> short_trace(same.size(), Rational(0));
  CHECK_THROWS_AS(oracle::reachable(short_trace, shell), TraceMismatch);
}

TEST_CASE("reachable is monotone under mixing") {
  auto inst = two_level(Rational(3, 4), Rational(1, 4), 1);
  const auto shell = oracle::explicit_shell(inst, 2);
  const auto d = static_cast<std::size_t>(shell.dimension);
  // t: top-heavy but reachable; t2: an average of t with uniform
  std::vector<Rational> values;
  for (const auto& e : shell.entries) values.push_back(e.value);
  std::sort(values.begin(), values.end(), std::greater<>());
  REQUIRE(oracle::reachable(values, shell));
  const Rational u = shell.trace / d;
  std::vector<Rational> mixed(d);
  for (std::size_t i = 0; i < d; ++i)
    mixed[i] = (values[i] + u) / 2;
  CHECK(oracle::reachable(mixed, shell));
}

TEST_CASE("bulk shells cover every system level") {
  const auto inst = two_level(Rational(1, 2), Rational(1, 2));
  const auto bulk = oracle::bulk_shell_energies(inst);
  // E - E_S must stay inside {0..3} for E_S in {0,1}
  CHECK(bulk == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("thermal state resets nothing") {
  OracleInstance inst = two_level(Rational(0), Rational(0));
  inst.state = oracle::thermal_weights(inst);
  CHECK(inst.state[0][0] == Rational(2, 3));
  CHECK(inst.state[1][0] == Rational(1, 3));
  CHECK(oracle::exact_k_star(inst, Rational(0)) == 0);
  CHECK(oracle::brute_force_max_reset(inst, Rational(0),
                                      SchemeSpec::Kind::Deterministic) == 0);
}

TEST_CASE("pure excited state matches the rank formula") {
  // Z_S = 3/2, pure at E = 1: ratio = Z * 2^E / (1 - eps)
  auto inst = two_level(Rational(0), Rational(1), 4);
  CHECK(oracle::exact_rank_ratio(inst, Rational(0)) == Rational(3));
  CHECK(oracle::exact_k_star(inst, Rational(0)) == 1);
  CHECK(oracle::brute_force_max_reset(inst, Rational(0),
                                      SchemeSpec::Kind::Deterministic) == 1);
  // eps = 1/4 pushes the ratio to 4: one more qubit
  CHECK(oracle::exact_rank_ratio(inst, Rational(1, 4)) == Rational(4));
  CHECK(oracle::exact_k_star(inst, Rational(1, 4)) == 2);
  CHECK(oracle::brute_force_max_reset(inst, Rational(1, 4),
                                      SchemeSpec::Kind::Deterministic) == 2);
}

TEST_CASE("schemes agree on the oracle side") {
  auto inst = two_level(Rational(1, 2), Rational(1, 2), 3);
  for (const Rational& eps : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
    const auto det = oracle::brute_force_max_reset(
        inst, eps, SchemeSpec::Kind::Deterministic);
    const auto bnd =
        oracle::brute_force_max_reset(inst, eps, SchemeSpec::Kind::Bounded);
    const auto gtd =
        oracle::brute_force_max_reset(inst, eps, SchemeSpec::Kind::Guaranteed);
    CHECK(det == bnd);
    CHECK(det == gtd);
  }
}

TEST_CASE("distribution feasibility nests") {
  auto inst = two_level(Rational(0), Rational(1), 4);
  const auto k = oracle::brute_force_max_reset(inst, Rational(0),
                                               SchemeSpec::Kind::Deterministic);
  // the realized m is feasible, m - 1 is not
  CHECK(oracle::feasible_with_distribution(inst, Rational(0), inst.cells - k,
                                           {Rational(1)}));
  CHECK(!oracle::feasible_with_distribution(
      inst, Rational(0), inst.cells - k - 1, {Rational(1)}));
  // spreading the same weight over two adjacent m is also feasible
  CHECK(oracle::feasible_with_distribution(
      inst, Rational(0), inst.cells - k,
      {Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("value classes and permutations") {
  auto inst = two_level(Rational(3, 4), Rational(1, 4), 1);
  const auto shell = oracle::explicit_shell(inst, 1);
  std::vector<Rational> diag;
  for (const auto& e : shell.entries) diag.push_back(e.value);
  const auto classes = oracle::value_classes(diag);
  std::int64_t total = 0;
  for (const auto& [v, c] : classes) total += c;
  CHECK(total == shell.dimension);
  std::mt19937_64 rng(7);
  const auto perm = oracle::random_shell_permutation(shell, rng);
  CHECK(oracle::value_classes(oracle::permuted_diagonal(shell, perm)) ==
        classes);
  std::vector<std::size_t> bad(static_cast<std::size_t>(shell.dimension), 0);
  CHECK_THROWS_AS(oracle::permuted_diagonal(shell, bad), InvalidRange);
}

TEST_CASE("schur fuzz") {
  const auto report = oracle::schur_fuzz(4, 50, 123);
  CHECK(report.trials == 50);
  CHECK(report.failures == 0);
  CHECK_THROWS_AS(oracle::schur_fuzz(9, 1, 0), InvalidRange);
  CHECK_THROWS_AS(oracle::schur_fuzz(0, 1, 0), InvalidRange);
}
