// Throughput comparison of the OpenMP stencil kernels against their serial
// reference implementations, and of a full RK4 step.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hyperfoil/kernels.hpp"
#include "hyperfoil/presets.hpp"
#include "hyperfoil/solver.hpp"

namespace hf = hyperfoil;
using hf::kernels::kGhost;

namespace {

std::vector<double> random_field(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> a(n + 2 * kGhost, 0.0);
    for (int j = 0; j < n; ++j) a[kGhost + j] = uni(rng);
    hf::kernels::fill_ghosts(a, n);
    return a;
}

void bm_laplacian_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto u = random_field(n, 1);
    std::vector<double> lap(n);
    for (auto _ : state) {
        hf::kernels::radial_laplacian(u.data() + kGhost, lap.data(), n, 0.01);
        benchmark::DoNotOptimize(lap.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_laplacian_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto u = random_field(n, 1);
    std::vector<double> lap(n);
    for (auto _ : state) {
        hf::kernels::radial_laplacian_serial(u.data() + kGhost, lap.data(), n, 0.01);
        benchmark::DoNotOptimize(lap.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_derivative_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto u = random_field(n, 2);
    std::vector<double> du(n);
    for (auto _ : state) {
        hf::kernels::radial_derivative(u.data() + kGhost, du.data(), n, 0.01);
        benchmark::DoNotOptimize(du.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_derivative_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto u = random_field(n, 2);
    std::vector<double> du(n);
    for (auto _ : state) {
        hf::kernels::radial_derivative_serial(u.data() + kGhost, du.data(), n, 0.01);
        benchmark::DoNotOptimize(du.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n);
}

hf::RadialEvolver make_evolver(bool parallel, double r_max) {
    hf::PresetConfig cfg;
    cfg.preset = "coupled_wkg";
    cfg.resolve();
    hf::SystemSpec spec = hf::make_preset_system(cfg);
    hf::RadialGrid grid;
    grid.dr = 0.01;
    grid.r_max = r_max;
    hf::RadialEvolver ev(spec, grid);
    ev.set_parallel(parallel);
    ev.set_initial([](int, double r) { return 0.01 * std::exp(-r * r); },
                   [](int, double) { return 0.0; }, 3.0);
    return ev;
}

void bm_rk4_step_omp(benchmark::State& state) {
    auto ev = make_evolver(true, state.range(0) * 0.01);
    for (auto _ : state) {
        ev.step();
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * ev.grid().n());
}

void bm_rk4_step_serial(benchmark::State& state) {
    auto ev = make_evolver(false, state.range(0) * 0.01);
    for (auto _ : state) {
        ev.step();
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * ev.grid().n());
}

}  // namespace

BENCHMARK(bm_laplacian_omp)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_laplacian_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_derivative_omp)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_derivative_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_rk4_step_omp)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK(bm_rk4_step_serial)->Arg(1 << 12)->Arg(1 << 15);

BENCHMARK_MAIN();
