#include "ambec/engine.hpp"

#include <benchmark/benchmark.h>

using namespace ambec;

namespace {

const SystemParams& bench_params() {
    static SystemParams p(100.0, 1e4, {2, 0}, {1, 0});
    return p;
}

void BM_HamiltonianApply(benchmark::State& state) {
    const SystemParams& p = bench_params();
    const FockSpace space = FockSpace::build(p, CutoffPolicy::automatic());
    const Hamiltonian h(space, p.omega, p.delta);
    const StateVector psi = coherent_state(space, p.alpha, p.beta);
    std::vector<Complex> out(psi.amplitudes.size());
    for (auto _ : state) {
        h.apply(psi.amplitudes, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * space.dimension());
}
BENCHMARK(BM_HamiltonianApply);

void BM_Propagate(benchmark::State& state) {
    const SystemParams& p = bench_params();
    const FockSpace space = FockSpace::build(p, CutoffPolicy::automatic());
    const Hamiltonian h(space, p.omega, p.delta);
    const StateVector start = coherent_state(space, p.alpha, p.beta);
    PropagationSettings settings;
    settings.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        StateVector end = propagate(start, h, p.rescale(0.1), settings);
        benchmark::DoNotOptimize(end.amplitudes.data());
    }
}
BENCHMARK(BM_Propagate)->Arg(8)->Arg(10)->Arg(12);

void BM_Moment(benchmark::State& state) {
    SystemParams p(100.0, 1e4, {5, 0}, {2, 0});
    const FockSpace space = FockSpace::build(p, CutoffPolicy::automatic());
    const StateVector psi = coherent_state(space, p.alpha, p.beta);
    for (auto _ : state) {
        Complex m = moment(psi, 2, 2, 1, 1);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_Moment);

void BM_PerturbativeSweep(benchmark::State& state) {
    SystemParams p(100.0, 1e4, {10, 0}, {2, 0});
    const TimeGrid grid = TimeGrid::uniform(0.5, 200);
    const std::vector<WitnessKind> kinds = {
        WitnessKind::simple(WitnessTag::VarXa), WitnessKind::simple(WitnessTag::Da),
        WitnessKind::simple(WitnessTag::HZ1),   WitnessKind::hoa_a(4),
        WitnessKind::hz2_higher(1, 3)};
    for (auto _ : state) {
        auto series = sweep(p, grid, kinds, Backend::Perturbative);
        benchmark::DoNotOptimize(series.data());
    }
}
BENCHMARK(BM_PerturbativeSweep);

} // namespace

BENCHMARK_MAIN();
