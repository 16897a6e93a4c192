#include <benchmark/benchmark.h>

#include "rcm/duality.hpp"
#include "rcm/exact.hpp"
#include "rcm/rank_polynomial.hpp"
#include "rcm/samplers.hpp"

using namespace rcm;

static void BM_PartitionEnumerate12(benchmark::State& state) {
    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    RCParams params(0.6, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(partition_enumerate(box, params));
}
BENCHMARK(BM_PartitionEnumerate12);

static void BM_PartitionEnumerate24(benchmark::State& state) {
    Graph box = build_box_lattice(2, {4, 4}, BoundarySpec{});
    RCParams params(0.6, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(partition_enumerate(box, params, 24, state.range(0)));
}
BENCHMARK(BM_PartitionEnumerate24)->Arg(1)->Arg(4);

static void BM_RankPolynomialBox33(benchmark::State& state) {
    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    for (auto _ : state) benchmark::DoNotOptimize(rank_polynomial(box));
}
BENCHMARK(BM_RankPolynomialBox33);

static void BM_HeatBathSweep(benchmark::State& state) {
    Graph box = build_box_lattice(2, {16, 16}, BoundarySpec{});
    RCParams params(0.58, 2.0);
    HeatBathChain chain(box, params);
    chain.set_state(BondConfig(box.edge_count(), false));
    CounterRng rng(1, 1);
    for (auto _ : state) {
        for (int i = 0; i < box.edge_count(); ++i)
            chain.step({static_cast<int>(rng.next_below(box.edge_count())), rng.next_unit()});
    }
    state.SetItemsProcessed(state.iterations() * box.edge_count());
}
BENCHMARK(BM_HeatBathSweep);

static void BM_CftpSample3x3(benchmark::State& state) {
    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    RCParams params(0.6, 2.0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(cftp_sample(box, params, seed++));
}
BENCHMARK(BM_CftpSample3x3);

static void BM_PlanarDualBox(benchmark::State& state) {
    Graph box = build_box_lattice(2, {8, 8}, BoundarySpec{});
    for (auto _ : state) benchmark::DoNotOptimize(planar_dual(box));
}
BENCHMARK(BM_PlanarDualBox);

BENCHMARK_MAIN();
