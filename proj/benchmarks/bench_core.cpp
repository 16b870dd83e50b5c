#include <vector>

#include <benchmark/benchmark.h>

#include "vbs/fock.hpp"
#include "vbs/hamiltonian.hpp"
#include "vbs/resolvent.hpp"
#include "vbs/spectrum.hpp"

using namespace vbs;

namespace {

TrapParams params(double rabi, double eta) {
    TrapParams p;
    p.rabi = rabi;
    p.eta = LDParam(eta);
    return p;
}

void BM_CouplingTable(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(coupling_table(LDParam(0.4), n_max));
}
BENCHMARK(BM_CouplingTable)->Arg(20)->Arg(80);

void BM_DisplacementOracle(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(displacement_oracle(LDParam(0.4), 20));
}
BENCHMARK(BM_DisplacementOracle);

void BM_Eigenlevels(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const RealGaugeHamiltonian h(params(0.3, 0.4), n_max);
    for (auto _ : state)
        benchmark::DoNotOptimize(eigenlevels(h.at(1.0)));
}
BENCHMARK(BM_Eigenlevels)->Arg(20)->Arg(40)->Arg(80);

void BM_SweepFig1(benchmark::State& state) {
    const std::vector<double> grid = linear_grid(-2.5, 2.5, 101);
    const TrapParams p = params(0.3, 0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_spectrum(p, grid, 22));
}
BENCHMARK(BM_SweepFig1)->Unit(benchmark::kMillisecond);

void BM_FindResonance(benchmark::State& state) {
    const TrapParams p = params(0.01, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_resonance({0, 1}, p, default_n_max({0, 1}, p.eta)));
}
BENCHMARK(BM_FindResonance)->Unit(benchmark::kMillisecond);

void BM_BsShift(benchmark::State& state) {
    const TrapParams p = params(0.01, 0.1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bs_shift({n, n + 1}, p));
}
BENCHMARK(BM_BsShift)->Arg(0)->Arg(3)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
