#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "routine/synth.hpp"
#include "routine/windows.hpp"

using namespace routine;

namespace {

StateEventSequence make_sequence(int days, double rate) {
  const auto profile = fixtures::diurnal_profile("h001", 1234, rate);
  const auto log = generate(profile, 0, days);
  const auto collapsed = collapse_fridge_events(log, 10 * kSecondsPerMinute);
  return map_to_states(collapsed, StateMappingConfig::defaults());
}

void BM_FrobeniusDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = fixtures::random_matrix(rng);
  const auto b = fixtures::random_matrix(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frobenius_distance(a, b, 4.0));
  }
}
BENCHMARK(BM_FrobeniusDistance);

void BM_CountTransitions(benchmark::State& state) {
  const auto seq = make_sequence(45, 3.5);
  for (auto _ : state) {
    const TimePoint start = 10 * kSecondsPerDay + 9 * kSecondsPerHour;
    benchmark::DoNotOptimize(count_transitions(seq, start, start + kSecondsPerHour));
  }
}
BENCHMARK(BM_CountTransitions);

void BM_SlidingScan(benchmark::State& state) {
  const int days = static_cast<int>(state.range(0));
  const auto seq = make_sequence(days, 3.5);
  WindowConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sliding_scan(seq, config, 0, static_cast<TimePoint>(days) * kSecondsPerDay));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seq.items.size()));
}
BENCHMARK(BM_SlidingScan)->Arg(45)->Arg(90)->Arg(365);

void BM_Generate(benchmark::State& state) {
  const auto profile = fixtures::diurnal_profile("h001", 77, 3.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate(profile, 0, 45));
  }
}
BENCHMARK(BM_Generate);

}  // namespace

BENCHMARK_MAIN();
