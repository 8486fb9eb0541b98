#include "percolattice/box_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace percolattice::lattice {

namespace {
constexpr std::int64_t kMaxVertices = 60'000'000;
}

BoxGraph::BoxGraph(const LatticeModel& L, const Box& box) : model_(L), box_(box) {
    const int d = L.dimension;
    if (box.center.dim != d) throw std::invalid_argument("box center has wrong dimension");
    if (box.radius < 1 || box.radius > 30000) throw std::invalid_argument("box radius out of range");
    side_ = 2 * static_cast<std::int64_t>(box.radius) + 1;
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= side_;
        if (count > kMaxVertices) throw std::length_error("box too large for dense indexing");
    }

    rel_.resize(static_cast<std::size_t>(count * d));
    depth_.resize(static_cast<std::size_t>(count));
    for (std::int64_t id = 0; id < count; ++id) {
        std::int64_t rest = id;
        int far = 0;
        for (int i = d - 1; i >= 0; --i) {
            const auto r = static_cast<std::int16_t>(rest % side_ - box.radius);
            rest /= side_;
            rel_[static_cast<std::size_t>(id * d + i)] = r;
            far = std::max(far, std::abs(static_cast<int>(r)));
        }
        depth_[static_cast<std::size_t>(id)] = box.radius - far;
    }
    center_ = *find(box.center);

    inc_off_.assign(static_cast<std::size_t>(count) + 1, 0);
    for (std::int64_t id = 0; id < count; ++id) {
        const auto v = static_cast<VertexId>(id);
        for (const Vertex& w : neighbors(L, vertex(v))) {
            const auto wid = find(w);
            if (!wid) continue;
            EdgeId e;
            if (*wid < v) {
                e = edge_between(*wid, v);
            } else {
                e = static_cast<EdgeId>(ends_.size() / 2);
                ends_.push_back(v);
                ends_.push_back(*wid);
            }
            inc_.push_back({*wid, e});
        }
        inc_off_[static_cast<std::size_t>(id) + 1] = static_cast<std::uint32_t>(inc_.size());
    }

    cyc_off_.push_back(0);
    for (std::int64_t id = 0; id < count; ++id) {
        for (const BasisCycle& c : anchored_cycles(L, vertex(static_cast<VertexId>(id)))) {
            std::vector<VertexId> ids;
            for (const Vertex& w : c.vertices) {
                const auto wid = find(w);
                if (!wid) break;
                ids.push_back(*wid);
            }
            if (ids.size() != c.vertices.size()) continue;
            for (std::size_t k = 0; k < ids.size(); ++k) {
                cyc_v_.push_back(ids[k]);
                cyc_e_.push_back(edge_between(ids[k], ids[(k + 1) % ids.size()]));
            }
            cyc_off_.push_back(static_cast<std::uint32_t>(cyc_v_.size()));
        }
    }

    ec_off_.assign(edge_count() + 1, 0);
    for (EdgeId e : cyc_e_) ++ec_off_[e + 1];
    for (std::size_t i = 1; i < ec_off_.size(); ++i) ec_off_[i] += ec_off_[i - 1];
    ec_.resize(cyc_e_.size());
    std::vector<std::uint32_t> fill(ec_off_.begin(), ec_off_.end() - 1);
    for (CycleId c = 0; c + 1 < cyc_off_.size(); ++c) {
        for (EdgeId e : cycle_edges(c)) ec_[fill[e]++] = c;
    }
}

Vertex BoxGraph::vertex(VertexId v) const {
    Vertex out = Vertex::origin(dimension());
    for (int i = 0; i < dimension(); ++i) out[i] = coord(v, i);
    return out;
}

std::optional<VertexId> BoxGraph::find(const Vertex& v) const {
    if (v.dim != dimension()) return std::nullopt;
    std::int64_t id = 0;
    for (int i = 0; i < dimension(); ++i) {
        const std::int64_t r = static_cast<std::int64_t>(v[i]) - box_.center[i];
        if (r < -box_.radius || r > box_.radius) return std::nullopt;
        id = id * side_ + (r + box_.radius);
    }
    return static_cast<VertexId>(id);
}

VertexId BoxGraph::shifted(VertexId v, const Vertex& offset) const {
    std::int64_t id = 0;
    for (int i = 0; i < dimension(); ++i) {
        const std::int64_t r =
            rel_[static_cast<std::size_t>(v) * static_cast<std::size_t>(dimension()) + static_cast<std::size_t>(i)] +
            static_cast<std::int64_t>(offset[i]);
        if (r < -box_.radius || r > box_.radius) return kNone;
        id = id * side_ + (r + box_.radius);
    }
    return static_cast<VertexId>(id);
}

std::optional<EdgeId> BoxGraph::find(const Edge& e) const {
    const auto a = find(e.a);
    const auto b = find(e.b);
    if (!a || !b) return std::nullopt;
    const EdgeId id = edge_between(*a, *b);
    if (id == kNone) return std::nullopt;
    return id;
}

EdgeId BoxGraph::edge_between(VertexId v, VertexId w) const {
    for (const Incidence& inc : incident(v)) {
        if (inc.to == w) return inc.edge;
    }
    return kNone;
}

BasisCycle BoxGraph::cycle(CycleId c) const {
    BasisCycle out;
    for (VertexId v : cycle_vertices(c)) out.vertices.push_back(vertex(v));
    return out;
}

bool BoxGraph::same_orbit_as_center(VertexId v) const {
    if (model_.family != Family::PlanarHexagonal) return true;
    return ((coord(v, 0) + coord(v, 1)) & 1) == ((box_.center[0] + box_.center[1]) & 1);
}

}  // namespace percolattice::lattice
