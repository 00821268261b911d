#include <benchmark/benchmark.h>

#include <mmcurve/couplings.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/one_cut.hpp>
#include <mmcurve/thin.hpp>

namespace {

void BM_ThinZ(benchmark::State& state)
{
    auto frame = mmcurve::CouplingFrame::parse("g1,g2,g3,g4");
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmcurve::thin_z_of_v(frame, 10, degree));
    }
}
BENCHMARK(BM_ThinZ)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_FatVirasoro(benchmark::State& state)
{
    auto frame = mmcurve::CouplingFrame::parse("g1,g2,g3,g4");
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmcurve::fat_fn_virasoro(frame, n_max, 4));
    }
}
BENCHMARK(BM_FatVirasoro)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_OneCutH(benchmark::State& state)
{
    auto frame = mmcurve::CouplingFrame::parse("g3");
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmcurve::solve_one_cut_H(frame, mmcurve::CutOptions{degree, -1, 4}));
    }
}
BENCHMARK(BM_OneCutH)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_ComputeI0(benchmark::State& state)
{
    auto frame = mmcurve::CouplingFrame::parse("g1,g2,g3,g4,g5");
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmcurve::compute_I0(frame, degree));
    }
}
BENCHMARK(BM_ComputeI0)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
