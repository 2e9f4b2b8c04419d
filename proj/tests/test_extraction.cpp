#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bittery/extraction.hpp"

using namespace bittery;

TEST_CASE("scheme factories") {
  CHECK_THROWS_AS(SchemeSpec::deterministic(1.0), InvalidRange);
  CHECK_THROWS_AS(SchemeSpec::deterministic(-0.1), InvalidRange);
  CHECK_THROWS_AS(SchemeSpec::bounded(0.1, -1), InvalidRange);
  CHECK_THROWS_AS(SchemeSpec::guaranteed(2.0), InvalidRange);
  CHECK(SchemeSpec::bounded(0.1, 3).c == 3);
}

TEST_CASE("pure excited state work content") {
  // beta = ln2 so work in kT ln2 units is a base-2 logarithm
  const Temperature temp(std::numbers::ln2);
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const auto pure = DiagonalState::pure(sys, 1);
  const auto r = max_work(pure, sys, SchemeSpec::deterministic(0.0), temp, 8);
  // F_min = E0 = 1; w_max = 1 + kT ln(3/2)
  CHECK(r.f_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.w_max ==
        doctest::Approx(1.0 + std::log(1.5) / std::numbers::ln2)
            .epsilon(1e-12));
  CHECK(r.k_star == 1);  // floor(log2(3)) = 1
  CHECK(!r.exact_multiple);
}

TEST_CASE("exact kT ln2 multiple is inclusive") {
  const Temperature temp(std::numbers::ln2);
  const SystemSpec sys({{0.0, 2}});
  const auto pure = DiagonalState::pure(sys, 0);
  const auto r = max_work(pure, sys, SchemeSpec::deterministic(0.0), temp, 8);
  CHECK(r.w_max == doctest::Approx(1.0).epsilon(1e-12));  // log2(Z) = 1
  CHECK(r.exact_multiple);
  CHECK(r.k_star == 1);
}

TEST_CASE("thermal input extracts nothing") {
  const Temperature temp(0.7);
  const SystemSpec sys({{0.0, 1}, {1.0, 2}, {2.5, 1}});
  const auto tau = gibbs_state(sys, temp);
  const auto r = max_work(tau, sys, SchemeSpec::deterministic(0.0), temp, 4);
  CHECK(r.w_max == 0.0);  // bit-exact by construction
  CHECK(r.k_star == 0);
}

TEST_CASE("k_star clamps to the cell count") {
  const Temperature temp(std::numbers::ln2);
  const SystemSpec sys({{0.0, 1}, {10.0, 1}});
  const auto pure = DiagonalState::pure(sys, 1);
  const auto r = max_work(pure, sys, SchemeSpec::deterministic(0.0), temp, 3);
  CHECK(r.k_star == 3);
}

TEST_CASE("smoothing raises the min free energy") {
  const Temperature temp(1.0);
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const auto state = DiagonalState::from_level_totals(sys, {0.5, 0.5});
  const double f0 = smooth_min_free_energy(state, sys, 0.0, temp);
  const double f2 = smooth_min_free_energy(state, sys, 0.2, temp);
  const double f5 = smooth_min_free_energy(state, sys, 0.5, temp);
  CHECK(f0 < f2);
  CHECK(f2 < f5);
}

TEST_CASE("three schemes share one value") {
  const Temperature temp(1.0);
  const SystemSpec sys({{0.0, 2}, {1.3, 1}});
  const auto state = DiagonalState::from_state_weights(sys, {{0.5, 0.2}, {0.3}});
  for (double eps : {0.0, 0.15, 0.4}) {
    const double wd =
        max_work(state, sys, SchemeSpec::deterministic(eps), temp, 6).w_max;
    const double wb =
        max_work(state, sys, SchemeSpec::bounded(eps, 2), temp, 6).w_max;
    const double wg =
        max_work(state, sys, SchemeSpec::guaranteed(eps), temp, 6).w_max;
    CHECK(wd == wb);
    CHECK(wd == wg);
  }
}

TEST_CASE("scheme rank bounds") {
  const Temperature temp(1.0);
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const double log_z = log_partition_function(sys, temp);
  CHECK(scheme_rank_bound(SchemeSpec::deterministic(0.0), 2, sys, temp, 4) ==
        doctest::Approx(2.0 * std::numbers::ln2 + log_z).epsilon(1e-12));
  CHECK(scheme_rank_bound(SchemeSpec::guaranteed(0.0), 2, sys, temp, 4) ==
        doctest::Approx(log_z).epsilon(1e-12));
  CHECK_THROWS_AS(scheme_rank_bound(SchemeSpec::bounded(0.0, 3), 2, sys, temp,
                                    4),
                  InvalidRange);
  CHECK_THROWS_AS(scheme_rank_bound(SchemeSpec::deterministic(0.0), 4, sys,
                                    temp, 4),
                  InvalidRange);
}
