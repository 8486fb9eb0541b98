#pragma once

#include <optional>
#include <vector>

#include "percolattice/count_table.hpp"
#include "percolattice/lattice.hpp"

// Slow reference implementations for the tests. Nothing here shares code with the library beyond
// the lattice primitives (neighbours and basis cycles). Planar 2D lattices with full translation
// symmetry only.
namespace oracle {

using percolattice::CountTable;
using percolattice::Mode;
using percolattice::lattice::Edge;
using percolattice::lattice::EdgeSet;
using percolattice::lattice::LatticeModel;
using percolattice::lattice::Vertex;
using percolattice::lattice::VertexSet;

// Connected cell sets containing o (bond: o is an endpoint), by size and boundary size.
CountTable animals(const LatticeModel& L, Mode mode, int n_max);

// Interfaces of o from the definition itself.
CountTable interfaces(const LatticeModel& L, Mode mode, int n_max);

// The definition, condition by condition, for a candidate boundary S. Returns P when (S, P) is an
// interface (P being forced by S), nothing otherwise. `separating` is the vertex that S must enclose.
std::optional<EdgeSet> interface_for(const LatticeModel& L, const EdgeSet& S, const Vertex& separating);

// Number of vertices x such that S separates x from infinity.
std::size_t enclosed_vertices(const LatticeModel& L, const EdgeSet& S);

}  // namespace oracle
