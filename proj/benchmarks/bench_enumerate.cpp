#include <benchmark/benchmark.h>

#include "percolattice/enumerate.hpp"

namespace {

using namespace percolattice;

void BM_SiteAnimals(benchmark::State& state) {
    const auto L = lattice::parse_lattice("z2");
    enumerate::Options o;
    o.n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate::enumerate_site_animals(L, o));
}
BENCHMARK(BM_SiteAnimals)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BondInterfaces(benchmark::State& state) {
    const auto L = lattice::parse_lattice("z2");
    enumerate::Options o;
    o.n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate::enumerate_interfaces(L, Mode::bond, o));
}
BENCHMARK(BM_BondInterfaces)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TriangularPlateau(benchmark::State& state) {
    const auto L = lattice::parse_lattice("tri");
    enumerate::Options o;
    o.n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate::enumerate_site_interfaces_triangulated(L, o));
}
BENCHMARK(BM_TriangularPlateau)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
