#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "bittery/shell.hpp"

using namespace bittery;

namespace {

BlockSpectrum plain(std::vector<std::pair<double, double>> value_count) {
  std::vector<SpectrumBlock> blocks;
  std::int32_t i = 0;
  for (const auto& [v, c] : value_count) {
    blocks.push_back({std::log(v), std::log(c), {i++, 0}});
  }
  return BlockSpectrum(std::move(blocks));
}

}  // namespace

TEST_CASE("trivial single-level shell") {
  const SystemSpec sys({{0.0, 1}});
  const auto state = DiagonalState::from_level_totals(sys, {1.0});
  const auto bath = BathSpec::analytic(2, 1.0, 1);
  const auto shell = assemble_shell(state, sys, bath, {0}, 0.0);
  REQUIRE(shell.blocks().size() == 1);
  CHECK(shell.blocks()[0].log_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(shell.blocks()[0].log_multiplicity ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("shell ordering follows p * exp(beta E_S)") {
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const auto state = DiagonalState::from_level_totals(sys, {0.6, 0.4});
  const auto bath = BathSpec::analytic(2, 1.0, 32);
  const auto shell = assemble_shell(state, sys, bath, {1}, 20.0);
  REQUIRE(shell.blocks().size() == 2);
  // 0.4 * 2 = 0.8 beats 0.6: the excited level sorts first
  CHECK(shell.blocks()[0].tag.level == 1);
  CHECK(std::exp(shell.blocks()[0].log_value - shell.blocks()[1].log_value) ==
        doctest::Approx(0.8 / 0.6).epsilon(1e-12));
}

TEST_CASE("thermal state gives a flat shell") {
  const SystemSpec sys({{0.0, 1}, {1.0, 2}, {2.0, 1}});
  const auto bath = BathSpec::analytic(2, 1.0, 32);
  const Temperature temp(bath.beta());
  const auto tau = gibbs_state(sys, temp);
  const auto shell = assemble_shell(tau, sys, bath, {2}, 16.0);
  for (const auto& b : shell.blocks())
    CHECK(b.log_value ==
          doctest::Approx(shell.blocks()[0].log_value).epsilon(1e-12));
}

TEST_CASE("shell errors") {
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const auto state = DiagonalState::from_level_totals(sys, {0.5, 0.5});
  const auto bath = BathSpec::analytic(2, 1.0, 8);
  CHECK_THROWS_AS(assemble_shell(state, sys, bath, {0}, 0.5),
                  IncommensurateEnergy);
  CHECK_THROWS_AS(assemble_shell(state, sys, bath, {0}, 40.0), EmptyShell);
  const SystemSpec off({{0.0, 1}, {0.5, 1}});
  const auto st2 = DiagonalState::from_level_totals(off, {0.5, 0.5});
  CHECK_THROWS_AS(assemble_shell(st2, off, bath, {0}, 4.0),
                  IncommensurateEnergy);
}

TEST_CASE("epsilon truncation") {
  // sorted order: 0.8 (one entry), then 0.6 -> masses 0.4 and 0.6 of trace 1
  const auto spec = plain({{0.6, 1.0}, {0.4, 1.0}});
  SUBCASE("eps = 0 keeps everything") {
    const auto res = epsilon_truncate(spec, 0.0);
    CHECK(res.h[0] == 1.0);
    CHECK(res.h[1] == 1.0);
    CHECK(std::exp(res.log_rank) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("fractional boundary block") {
    const auto res = epsilon_truncate(spec, 0.3);
    CHECK(res.h[0] == 1.0);  // the 0.6 block sorts first here
    CHECK(res.h[1] == doctest::Approx(0.25).epsilon(1e-12));  // 0.1 of 0.4
    CHECK(res.trace_kept == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("single block scales the rank") {
    const auto one = plain({{0.125, 8.0}});
    const auto res = epsilon_truncate(one, 0.9);
    CHECK(std::exp(res.log_rank) == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("boundary on a class edge keeps the class") {
    const auto res = epsilon_truncate(spec, 0.4);
    CHECK(res.h[0] == 1.0);
    CHECK(res.h[1] == 0.0);
  }
  CHECK_THROWS_AS(epsilon_truncate(spec, 1.0), InvalidRange);
  CHECK_THROWS_AS(epsilon_truncate(spec, -0.1), InvalidRange);
}

TEST_CASE("majorization") {
  const auto a = plain({{0.5, 1.0}, {0.3, 1.0}, {0.2, 1.0}});
  const auto b = plain({{0.4, 2.0}, {0.2, 1.0}});
  const auto uniform = plain({{1.0 / 3.0, 3.0}});
  const auto peak = plain({{1.0, 1.0}});
  CHECK(majorizes(a, a));
  CHECK(majorizes(a, b));
  CHECK(!majorizes(b, a));  // 0.4 < 0.5 on the first prefix
  CHECK(majorizes(a, uniform));
  CHECK(majorizes(peak, uniform));
  CHECK(!majorizes(uniform, peak));
  const auto short_trace = plain({{0.4, 1.0}});
  CHECK_THROWS_AS(majorizes(a, short_trace), TraceMismatch);
}

TEST_CASE("rank closed form on analytic shells") {
  const SystemSpec sys({{0.0, 1}, {1.0, 1}});
  const auto bath = BathSpec::analytic(2, 1.0, 32);
  const Temperature temp(bath.beta());
  const auto tau = gibbs_state(sys, temp);
  const double e = 16.0;
  const double log_mb = bath.ref_log_multiplicity() + bath.beta() * e;
  const double log_z = log_partition_function(sys, temp);

  SUBCASE("thermal, eps = 0, no cells") {
    const auto shell = assemble_shell(tau, sys, bath, {0}, e);
    CHECK(rank_epsilon(shell, 0.0) ==
          doctest::Approx(log_z + log_mb).epsilon(1e-12));
  }
  SUBCASE("cells add exactly n ln2") {
    const auto s0 = assemble_shell(tau, sys, bath, {0}, e);
    const auto s3 = assemble_shell(tau, sys, bath, {3}, e);
    CHECK(rank_epsilon(s3, 0.2) - rank_epsilon(s0, 0.2) ==
          doctest::Approx(3.0 * std::numbers::ln2).epsilon(1e-12));
  }
}

TEST_CASE("csv serialization") {
  const auto spec = plain({{0.6, 1.0}, {0.4, 2.0}});
  std::ostringstream os;
  spec.to_csv(os);
  CHECK(os.str().substr(0, 31) == "log_value,log_multiplicity,tag\n");
  CHECK(os.str().find("0:0") != std::string::npos);
}
