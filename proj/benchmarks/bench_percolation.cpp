#include <benchmark/benchmark.h>

#include <vector>

#include "percolattice/percolation.hpp"

namespace {

using namespace percolattice;

void BM_Crossing(benchmark::State& state) {
    const auto L = lattice::parse_lattice("tri");
    const std::vector<int> radii{static_cast<int>(state.range(0))};
    percolation::McParams mc;
    mc.p = 0.5;
    mc.samples = 1000;
    mc.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(percolation::crossing_probability(L, Mode::site, radii, mc));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mc.samples));
}
BENCHMARK(BM_Crossing)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ClusterSizes(benchmark::State& state) {
    const auto L = lattice::parse_lattice("z2");
    percolation::McParams mc;
    mc.p = 0.5;
    mc.samples = 10000;
    mc.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(percolation::cluster_size_mc(L, Mode::bond, 6, mc));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mc.samples));
}
BENCHMARK(BM_ClusterSizes)->Unit(benchmark::kMillisecond);

void BM_Audit(benchmark::State& state) {
    const auto L = lattice::parse_lattice("z2");
    const auto G = std::make_shared<const lattice::BoxGraph>(L, lattice::make_box(L, 24));
    interface::Engine engine(*G);
    std::uint64_t s = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(percolation::audit_config(percolation::sample_config(G, Mode::site, 0.55, 2, s++), engine));
}
BENCHMARK(BM_Audit)->Unit(benchmark::kMillisecond);

}  // namespace
