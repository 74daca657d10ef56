#include <benchmark/benchmark.h>

#include "photodet/photodet.hpp"

using namespace photodet;

static void BM_laguerre(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(specfun::laguerre(n, 2.5, -37.0));
}
BENCHMARK(BM_laguerre)->Arg(10)->Arg(100)->Arg(1000);

static void BM_cond_prob_finite(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(cond_prob_finite(n, n, 0.6, 0.8, 3));
}
BENCHMARK(BM_cond_prob_finite)->Arg(10)->Arg(100)->Arg(1000);

static void BM_cond_matrix(benchmark::State& state) {
    const DetectorConfig d{0.6, FiniteModes{0.8, 3}};
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(cond_matrix(d, n, 2 * n + 40));
}
BENCHMARK(BM_cond_matrix)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_count_distribution(benchmark::State& state) {
    const DetectorConfig d{0.5, FiniteModes{1.0, 2}};
    const PhotonStatistics st = coherent_pmf(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_distribution(st, d));
}
BENCHMARK(BM_count_distribution)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_mc_sample_counts(benchmark::State& state) {
    const DetectorConfig d{0.6, FiniteModes{0.5, 2}};
    const auto signal = SignalAmplitudes::from_intensity(1.0);
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::mc_sample_counts(signal, d, 100000, 42, workers));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_mc_sample_counts)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_fock_bs_oracle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(oracle::fock_bs_oracle(state.range(0), 0.6, 0.8, 3, 140));
}
BENCHMARK(BM_fock_bs_oracle)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_invert_general(benchmark::State& state) {
    const DetectorConfig d{0.8, PoissonianLimit{0.2}};
    const CountDistribution c = count_distribution(coherent_pmf(3.0), d);
    for (auto _ : state) benchmark::DoNotOptimize(invert_general(c, d, state.range(0)));
}
BENCHMARK(BM_invert_general)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
