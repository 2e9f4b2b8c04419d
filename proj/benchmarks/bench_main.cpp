#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "bittery/landauer.hpp"
#include "bittery/shell.hpp"
#include "bittery/storage.hpp"

namespace {

bittery::BlockSpectrum random_spectrum(std::size_t blocks) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> val(-30.0, 0.0);
  std::uniform_real_distribution<double> mult(0.0, 40.0);
  std::vector<bittery::SpectrumBlock> out;
  out.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i)
    out.push_back({val(rng), mult(rng),
                   {static_cast<std::int32_t>(i), 0}});
  return bittery::BlockSpectrum(std::move(out));
}

void BM_epsilon_truncate(benchmark::State& state) {
  const auto spec = random_spectrum(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto res = bittery::epsilon_truncate(spec, 0.2);
    benchmark::DoNotOptimize(res.log_rank);
  }
}
BENCHMARK(BM_epsilon_truncate)->Arg(64)->Arg(1024)->Arg(16384);

void BM_bittery_entropy(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<bittery::BitteryState::Branch> branches;
  const int parts = 8;
  for (int i = 0; i < parts; ++i)
    branches.push_back({1.0 / parts, n * (i + 1) / parts});
  const auto s = bittery::BitteryState::mixture(n, std::move(branches));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bittery::bittery_entropy(s));
  }
}
BENCHMARK(BM_bittery_entropy)->Arg(64)->Arg(2000);

void BM_reset_work(benchmark::State& state) {
  const bittery::StaircaseSchedule sched{state.range(0), 25.0};
  const bittery::Temperature temp(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bittery::reset_work(sched, temp).work_total);
  }
}
BENCHMARK(BM_reset_work)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
