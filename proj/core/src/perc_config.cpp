#include "percolattice/perc_config.hpp"

namespace percolattice {

bool PercConfig::occupied(const lattice::Vertex& v) const {
    if (mode != Mode::site) return true;  // bond percolation keeps every vertex
    const auto id = graph->find(v);
    return id && occupied(*id);
}

bool PercConfig::occupied(const lattice::Edge& e) const {
    const auto id = graph->find(e);
    if (!id) return false;
    if (mode == Mode::bond) return occupied(*id);
    return occupied(graph->lo(*id)) && occupied(graph->hi(*id));
}

}  // namespace percolattice
