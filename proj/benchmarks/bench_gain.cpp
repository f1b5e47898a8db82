#include <benchmark/benchmark.h>

#include "qel/qel.hpp"

namespace {

// Orders scale together: {k, k, 2k} mirrors the default 64,64,128 shape.
qel::QuadratureOrders orders_for(int k)
{
    return {k, k, 2 * k};
}

void bm_gain_vn_uniform(benchmark::State& state)
{
    const qel::Povm m = qel::von_neumann_z();
    const qel::IsotropicPrior prior = qel::prior_uniform_ball();
    const qel::QuadratureOrders orders = orders_for(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            qel::average_gain(m, prior, 1, orders).average_gain);
}

void bm_gain_tetra_uniform(benchmark::State& state)
{
    const qel::Povm m = qel::tetrahedron_povm();
    const qel::IsotropicPrior prior = qel::prior_uniform_ball();
    const qel::QuadratureOrders orders = orders_for(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            qel::average_gain(m, prior, 2, orders).average_gain);
}

void bm_gain_tetra_pure(benchmark::State& state)
{
    const qel::Povm m = qel::tetrahedron_povm();
    const qel::IsotropicPrior prior = qel::prior_pure();
    const qel::QuadratureOrders orders = orders_for(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            qel::average_gain(m, prior, 2, orders).average_gain);
}

void bm_schmidt_gain_post_phi(benchmark::State& state)
{
    const qel::IsotropicPrior prior = qel::prior_uniform_ball();
    for (auto _ : state)
        benchmark::DoNotOptimize(qel::schmidt_gain(0.3, prior));
}

void bm_schmidt_gain_pre_phi(benchmark::State& state)
{
    const qel::IsotropicPrior prior = qel::prior_uniform_ball();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            qel::schmidt_gain(0.3, prior, {}, qel::SchmidtPath::pre_phi));
}

void bm_spin_blocks(benchmark::State& state)
{
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qel::spin_blocks(n).size());
}

void bm_fidelity_general_8dim(benchmark::State& state)
{
    const qel::QubitState a = qel::rho_from_bloch({0.2, 0.1, -0.4});
    const qel::QubitState b = qel::rho_from_bloch({-0.3, 0.5, 0.1});
    const qel::CMatrix a3 = qel::n_copies(a, 3);
    const qel::CMatrix b3 = qel::n_copies(b, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(qel::fidelity_general(a3, b3));
}

} // namespace

BENCHMARK(bm_gain_vn_uniform)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gain_tetra_uniform)
    ->Arg(32)
    ->Arg(64)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gain_tetra_pure)
    ->Arg(64)
    ->Arg(128)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_schmidt_gain_post_phi)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_schmidt_gain_pre_phi)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_spin_blocks)->Arg(3)->Arg(5);
BENCHMARK(bm_fidelity_general_8dim);

BENCHMARK_MAIN();
