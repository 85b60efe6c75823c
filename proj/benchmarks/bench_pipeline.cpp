#include <benchmark/benchmark.h>

#include "hurstlab/hurstlab.hpp"

using namespace hurstlab;

static void BM_Hurst(benchmark::State& state) {
  const auto x = synth::fgn(0.7, std::size_t(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dfa::hurst(x).h);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hurst)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

static void BM_HurstOrder2Bidirectional(benchmark::State& state) {
  const auto x = synth::fgn(0.7, std::size_t(state.range(0)), 1);
  const dfa::DfaConfig cfg{.order = 2, .bidirectional = true};
  for (auto _ : state) benchmark::DoNotOptimize(dfa::hurst(x, cfg).h);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HurstOrder2Bidirectional)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
  const auto x = synth::fgn(0.6, 1 << 16, 2);
  const auto grid = dfa::default_q_grid();
  for (auto _ : state) benchmark::DoNotOptimize(dfa::hurst_spectrum(x, {}, grid).size());
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

static void BM_Fgn(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synth::fgn(0.7, std::size_t(state.range(0)), ++seed).samples.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Fgn)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
  const auto x = synth::white_noise(std::size_t(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(emd::decompose(x).imfs.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
