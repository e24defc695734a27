#include <benchmark/benchmark.h>

#include "rwrs/bounds.hpp"
#include "rwrs/functionals.hpp"
#include "rwrs/local_time.hpp"
#include "rwrs/rng.hpp"
#include "rwrs/sampler.hpp"
#include "rwrs/strassen.hpp"
#include "rwrs/theta.hpp"

namespace {

void BM_gauss_stream(benchmark::State& state) {
    rwrs::rng::Stream s(12345);
    for (auto _ : state) benchmark::DoNotOptimize(s.next_gauss());
}
BENCHMARK(BM_gauss_stream);

void BM_simulate_walk(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rwrs::simulate_srw(n, seed++));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_simulate_walk)->Arg(1 << 12)->Arg(1 << 16);

void BM_simulate_bm(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rwrs::simulate_bm(1.0, 1e-4, seed++));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_simulate_bm);

void BM_bm_local_time(benchmark::State& state) {
    const auto path = rwrs::simulate_bm(1.0, 1e-4, 7);
    for (auto _ : state) benchmark::DoNotOptimize(rwrs::bm_local_time(path, 0.02));
}
BENCHMARK(BM_bm_local_time);

void BM_occupation_sample(benchmark::State& state) {
    const auto path = rwrs::simulate_bm(1.0, 1e-4, 7);
    const auto f = rwrs::symmetric_hat();
    for (auto _ : state) benchmark::DoNotOptimize(rwrs::sample_occupation(f, path));
}
BENCHMARK(BM_occupation_sample);

void BM_continuum_scenery_edge(benchmark::State& state) {
    const auto field = rwrs::QuenchedField::continuum(99);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(field.continuum_value(x, 12));
        x += 0.02;
        if (x > 50.0) x = 0.0;
    }
}
BENCHMARK(BM_continuum_scenery_edge);

void BM_pairing(benchmark::State& state) {
    const auto field = rwrs::QuenchedField::continuum(99);
    const double lambda = 100.0, h = 0.02;
    const rwrs::RescaledEdges edges(rwrs::profile_from_continuum(field, lambda * h), lambda, h);
    const auto path = rwrs::simulate_bm(1.0, 1e-4, 7);
    const auto grid = rwrs::bm_local_time(path, h);
    for (auto _ : state) benchmark::DoNotOptimize(rwrs::h_lambda(edges, grid));
}
BENCHMARK(BM_pairing);

void BM_compute_K(benchmark::State& state) {
    const auto field = rwrs::QuenchedField::discrete(3, rwrs::SceneryLaw::rademacher);
    const auto walk = rwrs::simulate_srw(1 << 16, 11);
    const auto grid = rwrs::walk_local_time(walk);
    for (auto _ : state) benchmark::DoNotOptimize(rwrs::compute_K_from_local_time(grid, field));
}
BENCHMARK(BM_compute_K);

}  // namespace

BENCHMARK_MAIN();
