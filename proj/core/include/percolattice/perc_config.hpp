#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "percolattice/box_graph.hpp"

namespace percolattice {

// Bernoulli occupancy on a finite box. Bit i belongs to vertex id i (site) or edge id i (bond)
// of the shared BoxGraph; outside the box is treated as vacant.
struct PercConfig {
    Mode mode = Mode::bond;
    std::shared_ptr<const lattice::BoxGraph> graph;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> occupancy;

    const lattice::LatticeModel& lattice() const { return graph->model(); }
    const lattice::Box& box() const { return graph->box(); }
    bool occupied(std::uint32_t index) const { return occupancy[index] != 0; }
    bool occupied(const lattice::Vertex& v) const;
    bool occupied(const lattice::Edge& e) const;
};

}  // namespace percolattice
