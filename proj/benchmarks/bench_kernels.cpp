#include <benchmark/benchmark.h>

#include <cmath>

#include "tricomi/blowup.hpp"
#include "tricomi/nonlinear.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/strichartz.hpp"

using namespace tricomi;
using propagator::Field;
using propagator::GridSpec;

namespace {
Field bump(const GridSpec& g, double amp) {
    return Field::sample(g, [&](const std::array<double, 3>& x) {
        const double s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return s < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    });
}
}  // namespace

static void BM_Airy(benchmark::State& st) {
    double x = -30.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(specfun::airy(x));
        x = x > 30.0 ? -30.0 : x + 0.37;
    }
}
BENCHMARK(BM_Airy);

static void BM_Multipliers(benchmark::State& st) {
    double lam = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(specfun::tricomi_multipliers(2.3, lam));
        lam = lam > 40.0 ? 0.1 : lam + 0.73;
    }
}
BENCHMARK(BM_Multipliers);

static void BM_F16(benchmark::State& st) {
    double z = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(st.range(0) ? specfun::hypergeom_F16_fast(z) : specfun::hypergeom_F16(z));
        z = std::fmod(z + 0.0137, 0.99);
    }
}
BENCHMARK(BM_F16)->Arg(0)->Arg(1);

static void BM_HomogeneousSolve(benchmark::State& st) {
    const GridSpec g{2, 8.0, static_cast<int>(st.range(0))};
    const Field f = bump(g, 1.0), z = Field::zeros(g);
    for (auto _ : st) benchmark::DoNotOptimize(propagator::homogeneous_solve(f, z, 2.0));
}
BENCHMARK(BM_HomogeneousSolve)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_Evolve(benchmark::State& st) {
    nonlinear::SimulationConfig cfg;
    cfg.p = 2.0;
    cfg.grid = GridSpec{2, 8.0, static_cast<int>(st.range(0))};
    cfg.dt = 0.02;
    cfg.T = 1.0;
    const Field f = bump(cfg.grid, 0.5), z = Field::zeros(cfg.grid);
    for (auto _ : st) benchmark::DoNotOptimize(nonlinear::evolve(f, z, cfg));
}
BENCHMARK(BM_Evolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_RadonRadial(benchmark::State& st) {
    blowup::RadialProfile P{3, {}, {}};
    for (int i = 0; i <= 2000; ++i) {
        P.radii.push_back(4.0 * i / 2000);
        P.values.push_back(std::exp(-P.radii.back() * P.radii.back()));
    }
    double rho = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(blowup::radon_radial(P, 3, rho));
        rho = rho > 3.0 ? 0.0 : rho + 0.011;
    }
}
BENCHMARK(BM_RadonRadial);

static void BM_LpProject(benchmark::State& st) {
    const GridSpec g{2, 8.0, 256};
    const Field f = bump(g, 1.0);
    const strichartz::LittlewoodPaleyBank bank;
    for (auto _ : st) benchmark::DoNotOptimize(strichartz::lp_project(f, 1, bank));
}
BENCHMARK(BM_LpProject)->Unit(benchmark::kMillisecond);

static void BM_ApplyA(benchmark::State& st) {
    const GridSpec g{2, 32.0, 256};
    const Field f = Field::sample(g, [](const std::array<double, 3>& x) {
        return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 8.0) * std::cos(0.75 * x[0]);
    });
    const strichartz::ModelAmplitude amp;
    for (auto _ : st) benchmark::DoNotOptimize(strichartz::apply_A(f, 3.0, amp));
}
BENCHMARK(BM_ApplyA)->Unit(benchmark::kMillisecond);

static void BM_Knapp(benchmark::State& st) {
    strichartz::KnappConfig cfg;
    cfg.deltas = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    cfg.n_t = 8;
    for (auto _ : st) benchmark::DoNotOptimize(strichartz::knapp_experiment(cfg));
}
BENCHMARK(BM_Knapp)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
