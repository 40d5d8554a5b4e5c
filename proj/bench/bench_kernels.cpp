// Serial reference vs OpenMP kernels, and full propagations on large grids.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qfall/kernels.hpp"
#include "qfall/propagator.hpp"
#include "qfall/split_step.hpp"

namespace {

using qfall::cplx;
namespace k = qfall::kernels;

std::vector<cplx> random_complex(std::size_t n)
{
    std::mt19937_64 rng(n);
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(n);
    for (auto& a : v) a = cplx(gauss(rng), gauss(rng));
    return v;
}

std::vector<double> random_real(std::size_t n)
{
    std::mt19937_64 rng(n + 1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& a : v) a = u(rng);
    return v;
}

template <void (*Fn)(std::span<const double>, std::span<cplx>)>
void phase_factors(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto theta = random_real(n);
    std::vector<cplx> out(n);
    for (auto _ : state) {
        Fn(theta, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <void (*Fn)(std::span<cplx>, std::span<const cplx>)>
void multiply(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto a = random_complex(n);
    const auto b = random_complex(n);
    for (auto& z : a) z /= std::abs(z);
    std::vector<cplx> f(b.size());
    for (std::size_t i = 0; i < n; ++i) f[i] = b[i] / std::abs(b[i]);
    for (auto _ : state) {
        Fn(a, f);
        benchmark::DoNotOptimize(a.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <k::MomentSums (*Fn)(std::span<const cplx>, std::span<const double>, double)>
void moment_sums(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_complex(n);
    const auto c = random_real(n);
    for (auto _ : state) benchmark::DoNotOptimize(Fn(a, c, 0.3));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void evolve_exact(benchmark::State& state)
{
    const qfall::Grid grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    qfall::PhysicalParams params;
    params.g = 1.0;
    const auto psi = qfall::make_gaussian(grid, 0.0, 0.0, 1.0, params);
    for (auto _ : state) benchmark::DoNotOptimize(qfall::evolve_exact(psi, params, 1.0));
}

void evolve_split_step(benchmark::State& state)
{
    const qfall::Grid grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    qfall::PhysicalParams params;
    params.g = 1.0;
    const auto psi = qfall::make_gaussian(grid, 0.0, 0.0, 1.0, params);
    for (auto _ : state) benchmark::DoNotOptimize(qfall::evolve_split_step(psi, params, 1.0, {64, 0}));
}

} // namespace

BENCHMARK(phase_factors<k::serial::phase_factors>)->Name("phase_factors/serial")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(phase_factors<k::omp::phase_factors>)->Name("phase_factors/omp")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(multiply<k::serial::multiply>)->Name("multiply/serial")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(multiply<k::omp::multiply>)->Name("multiply/omp")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(moment_sums<k::serial::moment_sums>)->Name("moment_sums/serial")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(moment_sums<k::omp::moment_sums>)->Name("moment_sums/omp")->RangeMultiplier(4)->Range(1 << 12, 1 << 22);
BENCHMARK(evolve_exact)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMicrosecond);
BENCHMARK(evolve_split_step)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
