#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "percolattice/interface.hpp"
#include "percolattice/percolation.hpp"

namespace {

using namespace percolattice;

// Origin clusters of seeded samples away from the margin, drawn once per benchmark.
std::vector<interface::DenseCluster> clusters(const std::shared_ptr<const lattice::BoxGraph>& shared, Mode mode, double p) {
    std::vector<interface::DenseCluster> out;
    for (std::uint64_t s = 0; out.size() < 200; ++s) {
        const auto oc = percolation::origin_cluster(percolation::sample_config(shared, mode, p, 1, s));
        if (!oc.empty && !oc.reaches_margin && oc.size() >= 5) out.push_back(oc.cluster);
    }
    return out;
}

void BM_Extract(benchmark::State& state, const char* lat, Mode mode, double p, bool certify) {
    const auto L = lattice::parse_lattice(lat);
    const auto G = std::make_shared<const lattice::BoxGraph>(L, lattice::make_box(L, L.dimension == 2 ? 20 : 9));
    const auto cs = clusters(G, mode, p);
    interface::Engine engine(*G);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(engine.extract(cs[i++ % cs.size()], certify));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK_CAPTURE(BM_Extract, z2_bond, "z2", Mode::bond, 0.45, false);
BENCHMARK_CAPTURE(BM_Extract, z2_bond_certified, "z2", Mode::bond, 0.45, true);
BENCHMARK_CAPTURE(BM_Extract, tri_site, "tri", Mode::site, 0.45, false);
BENCHMARK_CAPTURE(BM_Extract, z3_bond, "z3", Mode::bond, 0.22, false);

void BM_ExtractPlanar(benchmark::State& state) {
    const auto L = lattice::parse_lattice("z2");
    const auto G = std::make_shared<const lattice::BoxGraph>(L, lattice::make_box(L, 20));
    const auto cs = clusters(G, Mode::bond, 0.45);
    interface::Engine engine(*G);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(engine.extract_planar(cs[i++ % cs.size()]));
}
BENCHMARK(BM_ExtractPlanar);

}  // namespace
