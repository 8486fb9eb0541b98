#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "percolattice/lattice.hpp"

namespace percolattice::lattice {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using CycleId = std::uint32_t;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Incidence {
    VertexId to;
    EdgeId edge;
};

// Dense, immutable indexing of the vertices, edges and basis cycles inside a Box.
// Vertex ids follow lexicographic coordinate order and edge ids follow (lesser end, greater end) order,
// so both orders are translation compatible.
class BoxGraph {
public:
    BoxGraph(const LatticeModel& L, const Box& box);

    const LatticeModel& model() const { return model_; }
    const Box& box() const { return box_; }
    int dimension() const { return model_.dimension; }

    std::size_t vertex_count() const { return depth_.size(); }
    std::size_t edge_count() const { return ends_.size() / 2; }
    std::size_t cycle_count() const { return cyc_off_.size() - 1; }

    VertexId center() const { return center_; }
    Vertex vertex(VertexId v) const;
    std::int32_t coord(VertexId v, int i) const {
        return box_.center[i] + rel_[static_cast<std::size_t>(v) * static_cast<std::size_t>(dimension()) +
                                     static_cast<std::size_t>(i)];
    }
    std::optional<VertexId> find(const Vertex& v) const;
    // Vertex id of v + offset, or kNone when it leaves the box.
    VertexId shifted(VertexId v, const Vertex& offset) const;

    std::span<const Incidence> incident(VertexId v) const {
        return {inc_.data() + inc_off_[v], inc_.data() + inc_off_[v + 1]};
    }
    VertexId lo(EdgeId e) const { return ends_[2 * static_cast<std::size_t>(e)]; }
    VertexId hi(EdgeId e) const { return ends_[2 * static_cast<std::size_t>(e) + 1]; }
    VertexId other(EdgeId e, VertexId v) const { return lo(e) == v ? hi(e) : lo(e); }
    Edge edge(EdgeId e) const { return Edge{vertex(lo(e)), vertex(hi(e))}; }
    std::optional<EdgeId> find(const Edge& e) const;
    EdgeId edge_between(VertexId v, VertexId w) const;

    std::span<const CycleId> cycles_of_edge(EdgeId e) const {
        return {ec_.data() + ec_off_[e], ec_.data() + ec_off_[e + 1]};
    }
    std::span<const VertexId> cycle_vertices(CycleId c) const {
        return {cyc_v_.data() + cyc_off_[c], cyc_v_.data() + cyc_off_[c + 1]};
    }
    // Edge i joins cycle vertex i and cycle vertex i+1 (cyclically).
    std::span<const EdgeId> cycle_edges(CycleId c) const {
        return {cyc_e_.data() + cyc_off_[c], cyc_e_.data() + cyc_off_[c + 1]};
    }
    BasisCycle cycle(CycleId c) const;

    // Steps from the box boundary: 0 on the boundary.
    int depth(VertexId v) const { return depth_[v]; }
    bool on_boundary(VertexId v) const { return depth_[v] == 0; }
    bool in_margin(VertexId v) const { return depth_[v] < box_.margin; }
    bool same_orbit_as_center(VertexId v) const;

private:
    LatticeModel model_;
    Box box_;
    std::int64_t side_ = 0;
    VertexId center_ = 0;
    std::vector<std::int16_t> rel_;
    std::vector<std::int32_t> depth_;
    std::vector<std::uint32_t> inc_off_;
    std::vector<Incidence> inc_;
    std::vector<VertexId> ends_;
    std::vector<std::uint32_t> cyc_off_;
    std::vector<VertexId> cyc_v_;
    std::vector<EdgeId> cyc_e_;
    std::vector<std::uint32_t> ec_off_;
    std::vector<CycleId> ec_;
};

}  // namespace percolattice::lattice
