#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bittery/storage.hpp"

using namespace bittery;

namespace {

// direct entropy of a small bittery mixture by expanding all 2^n strings
double entropy_by_expansion(const BitteryState& s) {
  const auto n = static_cast<std::size_t>(s.cells());
  std::vector<double> p(std::size_t{1} << n, 0.0);
  for (const auto& br : s.branches()) {
    const auto m = static_cast<std::size_t>(br.mixed_cells);
    // support: first m qubits free, the rest fixed to |0>
    for (std::size_t x = 0; x < (std::size_t{1} << m); ++x)
      p[x] += br.probability / static_cast<double>(std::size_t{1} << m);
  }
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

}  // namespace

TEST_CASE("bittery state invariants") {
  CHECK_THROWS_AS(BitteryState::mixture(2, {{0.5, 0}}), InvalidSpec);
  CHECK_THROWS_AS(BitteryState::mixture(2, {{1.0, 3}}), InvalidSpec);
  CHECK_THROWS_AS(BitteryState::mixture(2, {{-0.2, 0}, {1.2, 1}}),
                  InvalidSpec);
  const auto s = BitteryState::mixture(3, {{0.25, 1}, {0.25, 1}, {0.5, 3}});
  CHECK(s.branches().size() == 2);  // equal-m branches merge
  CHECK(s.branches()[0].probability == doctest::Approx(0.5));
  CHECK(s.support_log2() == 3);
}

TEST_CASE("bittery entropy against direct expansion") {
  CHECK(bittery_entropy(BitteryState::initial(5)) ==
        doctest::Approx(5.0 * std::numbers::ln2).epsilon(1e-12));
  CHECK(bittery_entropy(BitteryState::pure_stack(6, 2)) ==
        doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
  CHECK(bittery_entropy(BitteryState::pure_stack(4, 0)) ==
        doctest::Approx(0.0));
  const auto mix = BitteryState::mixture(4, {{0.3, 0}, {0.45, 2}, {0.25, 4}});
  CHECK(bittery_entropy(mix) ==
        doctest::Approx(entropy_by_expansion(mix)).epsilon(1e-12));
  // ring structure stays tiny even for huge n
  const auto big = BitteryState::mixture(4000, {{0.5, 100}, {0.5, 3999}});
  CHECK(big.rings().size() == 2);
  CHECK(bittery_entropy(big) > 0.0);
}

TEST_CASE("scheme final states") {
  const auto det = final_bittery_state(SchemeSpec::deterministic(0.1), 4, 1);
  CHECK(det.branches().size() == 2);
  CHECK_THROWS_AS(final_bittery_state(SchemeSpec::deterministic(0.1), 4, 4),
                  UnsupportedRange);
  CHECK_THROWS_AS(final_bittery_state(SchemeSpec::guaranteed(0.1), 4, 1),
                  UnsupportedRange);

  const auto bnd = final_bittery_state(SchemeSpec::bounded(0.1, 2), 5, 1, 3,
                                       {0.2, 0.3, 0.5});
  CHECK(bnd.branches().size() == 4);
  CHECK_THROWS_AS(final_bittery_state(SchemeSpec::bounded(0.1, 1), 5, 1, 3,
                                      {0.2, 0.3, 0.5}),
                  UnsupportedRange);
  CHECK_THROWS_AS(final_bittery_state(SchemeSpec::guaranteed(0.1), 5, 1, 3,
                                      {0.2, 0.3, 0.5}),
                  UnsupportedRange);
  const auto gtd = final_bittery_state(SchemeSpec::guaranteed(0.1), 5, 0, 2,
                                       {0.2, 0.3, 0.5});
  CHECK(gtd.branches().size() == 4);
}

TEST_CASE("entropy certificate for the deterministic scheme") {
  const Temperature temp(1.0);
  const auto cert = entropy_change_certificate(SchemeSpec::deterministic(0.1),
                                               6, 2, 2, {1.0}, temp);
  CHECK(cert.success_entropy ==
        doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
  CHECK(cert.entropy_decreases);
  CHECK(cert.entropy_decreases_exact);
  CHECK(cert.sufficient_condition);
  CHECK(cert.ledger.delta_S ==
        doctest::Approx(-4.0 * std::numbers::ln2).epsilon(1e-12));
  CHECK(cert.ledger.heat_like == 0.0);
}

TEST_CASE("entropy certificate chain for a spread distribution") {
  const Temperature temp(1.0);
  const std::vector<double> p = {0.25, 0.5, 0.25};
  const auto cert = entropy_change_certificate(SchemeSpec::bounded(0.2, 2), 8,
                                               1, 3, p, temp);
  CHECK(cert.success_entropy < cert.chain_middle);
  CHECK(cert.chain_middle <= cert.chain_upper + 1e-12);
  CHECK(cert.chain_upper < 8.0 * std::numbers::ln2);
  CHECK(cert.entropy_decreases_exact);
}

TEST_CASE("storage ledger identity") {
  const Temperature temp(2.0);  // kT = 0.5
  const auto up = StorageLedger::make(1.0, 0.4, temp);
  CHECK(up.delta_F == doctest::Approx(1.0 - 0.5 * 0.4));
  CHECK(up.heat_like == doctest::Approx(0.2));
  const auto down = StorageLedger::make(1.0, -0.4, temp);
  CHECK(down.heat_like == 0.0);
}

TEST_CASE("additional work from a dense window") {
  const Temperature temp(1.0);
  const WeightLadder ladder(0.5, 16, 0.0);
  SUBCASE("two levels match the pencil form") {
    const auto aw = weight_additional_work(ladder, 0.5, 1.0, temp);
    CHECK(aw.value ==
          doctest::Approx(std::log(1.0 + std::exp(-0.5))).epsilon(1e-12));
    CHECK(aw.closed_form == doctest::Approx(aw.value).epsilon(1e-12));
  }
  SUBCASE("single level is exactly zero") {
    const auto aw = weight_additional_work(ladder, 1.0, 1.0, temp);
    CHECK(aw.value == 0.0);
    CHECK(aw.closed_form == 0.0);
  }
  CHECK_THROWS_AS(weight_additional_work(ladder, 1.0, 0.5, temp),
                  InvalidRange);
  CHECK_THROWS_AS(weight_additional_work(ladder, 0.5, 0.7, temp), OffGrid);
  CHECK_THROWS_AS(weight_additional_work(ladder, 0.0, 10.0, temp),
                  InvalidRange);  // wider than the ladder
}

TEST_CASE("weight transition ledger") {
  const Temperature temp(1.0);
  WeightTransition t;
  t.distribution = {{1.0, 1.0}};
  const auto l = weight_ledger(t, temp);
  CHECK(l.delta_E == doctest::Approx(1.0));
  CHECK(l.delta_S == 0.0);
  CHECK(l.delta_F == doctest::Approx(1.0));

  WeightTransition spread;
  spread.distribution = {{1.0, 0.5}, {2.0, 0.5}};
  const auto ls = weight_ledger(spread, temp);
  CHECK(ls.delta_S == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(ls.delta_F < ls.delta_E);  // fluctuations cost free energy

  WeightTransition bad;
  bad.distribution = {{-1.0, 0.5}, {2.0, 0.5}};
  CHECK_THROWS_AS(weight_ledger(bad, temp), InvalidSpec);
}
