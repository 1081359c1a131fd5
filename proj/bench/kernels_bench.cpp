// Serial reference against OpenMP kernel for each exhaustive sweep.

#include <benchmark/benchmark.h>

#include "cryptogame/crypto/hash.hpp"
#include "cryptogame/kernels/kernels.hpp"

namespace {

using namespace cryptogame;

const crypto::FeistelKey bench_key(0xC0FFEE42u);

void BM_FeistelSweepSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::feistel_roundtrip_failures_serial(bench_key));
    state.SetItemsProcessed(state.iterations() * 65536);
}

void BM_FeistelSweepParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::feistel_roundtrip_failures(bench_key));
    state.SetItemsProcessed(state.iterations() * 65536);
}

// A 20-bit target forces a search deep into the 3-byte candidates.
constexpr std::uint32_t preimage_target = 0xABCDEu;

void BM_PreimageSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::find_preimage_serial(preimage_target, 20));
}

void BM_PreimageParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::find_preimage(preimage_target, 20));
}

void BM_AssociativitySerial(benchmark::State& state) {
    const auto curve = crypto::EcCurve::teaching_curve();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::associativity_violations_serial(curve));
}

void BM_AssociativityParallel(benchmark::State& state) {
    const auto curve = crypto::EcCurve::teaching_curve();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::associativity_violations(curve));
}

void BM_AvalancheSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(crypto::avalanche_score(1000, 16, 7));
}

void BM_AvalancheParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::avalanche_score(1000, 16, 7));
}

}  // namespace

BENCHMARK(BM_FeistelSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FeistelSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreimageSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreimageParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociativitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociativityParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AvalancheSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AvalancheParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
