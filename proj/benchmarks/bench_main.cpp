#include <benchmark/benchmark.h>

#include <vector>

#include "phantom/analysis/experiment.hpp"
#include "phantom/closedform/closedform.hpp"
#include "phantom/spectral/pseudospectrum.hpp"
#include "phantom/transfer/matrix.hpp"
#include "phantom/transfer/series.hpp"
#include "phantom/transfer/walk.hpp"

using namespace phantom;

namespace {

ModelParams model(Boundary b, int n)
{
    ModelParams p;
    p.boundary = b;
    p.n = n;
    p.q = 2;
    return p;
}

void BM_PbcMatvec(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    PrecisionScope scope(256);
    auto a = build_pbc(model(Boundary::pbc, n)).convert<BigFloat>();
    std::vector<BigFloat> x(a.dim(), BigFloat(1)), y(a.dim());
    for (auto _ : state) {
        a.apply(std::span<const BigFloat>(x), std::span<BigFloat>(y));
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(a.dim()));
}
BENCHMARK(BM_PbcMatvec)->Arg(24)->Arg(48);

void BM_IterateSeriesRational(benchmark::State& state)
{
    auto e = make_experiment(model(Boundary::obc, static_cast<int>(state.range(0))), PairKind::otoc);
    for (auto _ : state)
        benchmark::DoNotOptimize(iterate_series(e.matrix, e.pair, 60, true));
}
BENCHMARK(BM_IterateSeriesRational)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_IterateSeriesBigFloat(benchmark::State& state)
{
    PrecisionScope scope(256);
    auto e = make_experiment(model(Boundary::pbc, static_cast<int>(state.range(0))), PairKind::otoc);
    auto a = e.matrix.convert<BigFloat>();
    auto pair = e.pair.convert<BigFloat>();
    for (auto _ : state)
        benchmark::DoNotOptimize(iterate_series(a, pair, 6 * static_cast<std::size_t>(state.range(0)), true));
}
BENCHMARK(BM_IterateSeriesBigFloat)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SigmaMinObc(benchmark::State& state)
{
    auto op = pseudo_operator(build_obc(model(Boundary::obc, static_cast<int>(state.range(0)))), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma_min(op, cplx(0.7, 0.2)));
}
BENCHMARK(BM_SigmaMinObc)->Arg(30)->Arg(120);

void BM_SigmaMinPbcFourier(benchmark::State& state)
{
    auto op = pbc_fourier_operator(static_cast<int>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma_min(op, cplx(0.7, 0.2)));
}
BENCHMARK(BM_SigmaMinPbcFourier)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_OtocClosedForm(benchmark::State& state)
{
    PrecisionScope scope(256);
    std::size_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(otoc_closed_q2(t++ % 100));
}
BENCHMARK(BM_OtocClosedForm);

void BM_SimulateWalk(benchmark::State& state)
{
    const auto rates = rates_from_q(2).convert<double>();
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_walk(30, rates, 20, 100000, 1));
}
BENCHMARK(BM_SimulateWalk)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
