#include <benchmark/benchmark.h>

#include "digitbin/collision.hpp"

namespace {

using namespace digitbin;

constexpr u64 kPrime = 100003;

void BM_CountBrute(benchmark::State& state) {
  const DigitSystem sys(kPrime, 10);
  for (auto _ : state) benchmark::DoNotOptimize(collision_count_brute(sys, 12345));
  state.SetItemsProcessed(state.iterations() * (kPrime - 1));
}
BENCHMARK(BM_CountBrute);

void BM_CountLinearScan(benchmark::State& state) {
  const DigitSystem sys(kPrime, 10);
  for (auto _ : state) benchmark::DoNotOptimize(detail::linear_count_scan(sys, 12345));
  state.SetItemsProcessed(state.iterations() * (kPrime - 1));
}
BENCHMARK(BM_CountLinearScan);

// Runs cost O(g); the multiplier is the lag-l power b^l used by deviations.
void BM_CountLinearRuns(benchmark::State& state) {
  const DigitSystem sys(kPrime, 10);
  const u64 g = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(detail::linear_count_runs(sys, g));
}
BENCHMARK(BM_CountLinearRuns)->Arg(10)->Arg(100)->Arg(1000);

void BM_VerifyGateExhaustive(benchmark::State& state) {
  const DigitSystem sys(static_cast<u64>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(verify_gate(sys).passed());
}
BENCHMARK(BM_VerifyGateExhaustive)->Arg(1009)->Arg(10007)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
