#include <benchmark/benchmark.h>

#include "qgi/analytic.hpp"
#include "qgi/classical.hpp"
#include "qgi/numeric.hpp"

namespace {

const qgi::InterferometerSpec kLevitated = qgi::closed_spec_for_momentum({1, 1}, 1, 1, 1);

void BM_AnalyticPhase(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qgi::analytic::interference_term(kLevitated));
}
BENCHMARK(BM_AnalyticPhase);

void BM_ClassicalLedger(benchmark::State& state) {
    const auto kick = state.range(0) ? qgi::classical::KickModel::FiniteExtrapolated
                                     : qgi::classical::KickModel::Instantaneous;
    for (auto _ : state) benchmark::DoNotOptimize(qgi::classical::arm_ledger(kLevitated, kick));
}
BENCHMARK(BM_ClassicalLedger)->Arg(0)->Arg(1);

void BM_OverlapSplitStep(benchmark::State& state) {
    qgi::numeric::Resolution res;
    res.n_points = static_cast<std::size_t>(state.range(0));
    res.n_steps = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgi::numeric::overlap_interference(kLevitated, res));
    }
}
BENCHMARK(BM_OverlapSplitStep)
    ->Args({2048, 512})
    ->Args({4096, 2048})
    ->Unit(benchmark::kMillisecond);

void BM_EvolveExactKernel(benchmark::State& state) {
    const qgi::numeric::GridConfig grid{-15.0, 15.0, static_cast<std::size_t>(state.range(0))};
    const auto psi = qgi::numeric::make_gaussian(grid, 0.0, 0.0, 1.0);
    const qgi::numeric::EvolutionPlan plan{
        1.0, 1.0, 1.0, 1, qgi::numeric::EvolutionMethod::ExactKernelConvolution, 1.0};
    for (auto _ : state) {
        auto work = psi;
        qgi::numeric::evolve(work, plan);
        benchmark::DoNotOptimize(work.amplitudes().data());
    }
}
BENCHMARK(BM_EvolveExactKernel)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
