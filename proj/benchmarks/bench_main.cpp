#include <benchmark/benchmark.h>

#include <vector>

#include "kappaosc/clusters.hpp"
#include "kappaosc/flip.hpp"
#include "kappaosc/rng.hpp"

using namespace kappaosc;

namespace {

KappaContext unit_ctx() {
    KappaContext ctx;
    ctx.kappa = 1.0;
    ctx.m0 = 1.0;
    ctx.tol_solver = 1e-13;
    return ctx;
}

void bm_omega_kappa(benchmark::State& state) {
    const KappaContext ctx = unit_ctx();
    const Vec3 k{1.2, -0.4, 0.7};
    for (auto _ : state) benchmark::DoNotOptimize(omega_kappa(k, ctx));
}
BENCHMARK(bm_omega_kappa);

void bm_compose_n(benchmark::State& state) {
    const KappaContext ctx = unit_ctx();
    SplitMix64 rng(3);
    std::vector<FourMomentum> momenta;
    for (int i = 0; i < 8; ++i) momenta.push_back({rng.uniform(0.0, 2.0), rng.vec3(1.0)});
    for (auto _ : state) benchmark::DoNotOptimize(compose_n(momenta, ctx));
}
BENCHMARK(bm_compose_n);

void bm_solve_coupled(benchmark::State& state) {
    const KappaContext ctx = unit_ctx();
    const Vec3 kp{0.8, 0.2, -0.1};
    const Vec3 kq{-0.3, 0.5, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(solve_coupled(kp, kq, {+1, -1}, ctx));
}
BENCHMARK(bm_solve_coupled);

void bm_circ_nfold(benchmark::State& state) {
    const KappaContext ctx = unit_ctx();
    SplitMix64 rng(5);
    std::vector<OscFactor> fs;
    for (int i = 0; i < 6; ++i) {
        const Vec3 k = rng.vec3(1.0);
        fs.push_back(creation(k, omega_kappa(k, ctx)));
    }
    for (auto _ : state) benchmark::DoNotOptimize(circ_nfold(fs, ctx));
}
BENCHMARK(bm_circ_nfold);

void bm_tau_kappa(benchmark::State& state) {
    const KappaContext ctx = unit_ctx();
    const ShellSolution sol = assign_binary_shells(+1, +1, {0.3, 0.1, 0.0}, {0.0, 0.4, 0.1}, ctx);
    const OscFactor x = annihilation({0.3, 0.1, 0.0}, sol.p0);
    const OscFactor y = annihilation({0.0, 0.4, 0.1}, sol.q0);
    for (auto _ : state) benchmark::DoNotOptimize(tau_kappa(x, y, ctx));
}
BENCHMARK(bm_tau_kappa);

void bm_smear_cluster(benchmark::State& state) {
    KappaContext ctx = unit_ctx();
    ctx.m0 = 0.0;
    ctx.kappa = 4.0;  // keep the rescaled support inside the hull at every size
    const Grid2 grid = Grid2::uniform_1d(static_cast<int>(state.range(0)), -2.0, 2.0);
    const Amplitude2 input = default_packet_fixture(grid);
    for (auto _ : state) benchmark::DoNotOptimize(smear_cluster(input, grid, ctx));
}
BENCHMARK(bm_smear_cluster)->Arg(8)->Arg(16)->Arg(32);

void bm_factorizability_metric(benchmark::State& state) {
    KappaContext ctx = unit_ctx();
    ctx.m0 = 0.0;
    ctx.kappa = 4.0;
    const Grid2 grid = Grid2::uniform_1d(32, -2.0, 2.0);
    const Amplitude2 smeared = smear_cluster(default_packet_fixture(grid), grid, ctx);
    for (auto _ : state) benchmark::DoNotOptimize(factorizability_metric(smeared));
}
BENCHMARK(bm_factorizability_metric);

}  // namespace

BENCHMARK_MAIN();
