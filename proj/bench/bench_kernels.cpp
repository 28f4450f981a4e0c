// Serial dense reference vs the sorted-prefix OpenMP kernel, and the
// experiment runner at different shard counts.

#include "idp/kernels.hpp"
#include "idp/simulation.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

idp::Sample normal_sample(std::size_t n, std::uint64_t seed, double shift) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(shift, 1.0);
    std::vector<double> v(n);
    for (double& e : v) e = d(rng);
    return idp::Sample(std::move(v));
}

constexpr std::size_t kDraws = 20000;
const double kS = std::sqrt(2.0) - 1.0;

void BM_CountReference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const idp::WinMatrix a = idp::win_matrix(normal_sample(n, 1, 0.0), normal_sample(n, 2, 0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(idp::kernels::count_exceedances_reference(a, kS, 0.5, kDraws, idp::RngStream(3)));
    }
    state.SetItemsProcessed(state.iterations() * kDraws);
}

void BM_CountParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    const idp::Sample x = normal_sample(n, 1, 0.0);
    const idp::Sample y = normal_sample(n, 2, 0.3);
    const idp::kernels::PairLayout layout(x, y, idp::TieMode::Midrank);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            idp::kernels::count_exceedances(layout, kS, 0.5, kDraws, idp::RngStream(3), threads));
    }
    state.SetItemsProcessed(state.iterations() * kDraws);
}

void BM_Experiment(benchmark::State& state) {
    idp::ExperimentSpec spec;
    spec.n1 = spec.n2 = 10;
    spec.runs = 64;
    spec.mc_samples = 2000;
    spec.tests = {idp::TestKind::IDP, idp::TestKind::MWW};
    const int shards = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(idp::run_experiment(spec, shards));
    state.SetItemsProcessed(state.iterations() * spec.runs);
}

}  // namespace

BENCHMARK(BM_CountReference)->Arg(10)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel)
    ->ArgsProduct({{10, 20, 100}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Experiment)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
