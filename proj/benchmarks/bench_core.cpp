#include <benchmark/benchmark.h>

#include "genpow/power_table.hpp"
#include "genpow/spps.hpp"
#include "genpow/volterra.hpp"

#include <cmath>

using namespace genpow;

namespace {

SampledFunction shifted_square_phi(std::size_t m) {
    Grid g = Grid::uniform(0.0, 1.0, m, 0);
    return materialize_phi(FuncSpec::shifted_square(), g);
}

void BM_CumulativeIntegral(benchmark::State& state) {
    const std::size_t m = std::size_t(state.range(0));
    Grid g = Grid::uniform(0.0, 1.0, m, 0);
    cvec f(m);
    for (std::size_t i = 0; i < m; ++i) f[i] = std::cos(7.0 * g.node(i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cumulative_integral(g, f, 0));
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(m));
}
BENCHMARK(BM_CumulativeIntegral)->Arg(513)->Arg(2049)->Arg(8193);

void BM_BuildPowerTable(benchmark::State& state) {
    SampledFunction phi = shifted_square_phi(std::size_t(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_power_table(phi, 0, 16));
    }
}
BENCHMARK(BM_BuildPowerTable)->Arg(257)->Arg(1025)->Arg(4097);

void BM_KernelCompose(benchmark::State& state) {
    const std::size_t m = std::size_t(state.range(0));
    SampledFunction phi = shifted_square_phi(m);
    Kernel one = kernel_one(phi.grid);
    Kernel sig = kernel_sigma(phi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(one, sig));
    }
}
BENCHMARK(BM_KernelCompose)->Arg(65)->Arg(129)->Arg(257);

void BM_DirichletEigenvalues(benchmark::State& state) {
    const double pi = 3.14159265358979323846;
    Grid g = Grid::uniform(0.0, pi, std::size_t(state.range(0)), 0);
    cvec zeros(g.size(), cplx{0.0, 0.0}), ones(g.size(), cplx{1.0, 0.0});
    SampledFunction V(g, zeros, {zeros, zeros});
    SampledFunction psi0(g, ones, {zeros, zeros});
    SturmLiouvilleProblem prob = schrodinger_problem(V, psi0, 0);
    for (auto _ : state) {
        SppsSeries s = build_spps(prob, 30);
        benchmark::DoNotOptimize(dirichlet_eigenvalues(s, 0.0, 17.0, 4));
    }
}
BENCHMARK(BM_DirichletEigenvalues)->Arg(513)->Arg(1025);

}  // namespace

BENCHMARK_MAIN();
