#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "percolattice/box_graph.hpp"
#include "percolattice/lattice.hpp"
#include "percolattice/perc_config.hpp"

namespace percolattice::interface {

using lattice::BoxGraph;
using lattice::CycleId;
using lattice::Edge;
using lattice::EdgeId;
using lattice::Vertex;
using lattice::VertexId;

// A site interface keeps its underlying bond pair; P_sites/boundary_sites are V(P) and V(∂P).
struct Interface {
    Mode mode = Mode::bond;
    std::vector<Edge> P;
    std::vector<Edge> boundary;
    std::vector<Vertex> P_sites;
    std::vector<Vertex> boundary_sites;
    std::size_t D_size = 0;

    std::size_t size() const { return mode == Mode::bond ? P.size() : P_sites.size(); }
    std::size_t boundary_size() const { return mode == Mode::bond ? boundary.size() : boundary_sites.size(); }

    friend bool operator==(const Interface& a, const Interface& b) {
        return a.mode == b.mode && a.P == b.P && a.boundary == b.boundary && a.P_sites == b.P_sites &&
               a.boundary_sites == b.boundary_sites;
    }
};

struct Cluster {
    Mode mode = Mode::bond;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;  // bond: occupied edges; site: ignored (induced edges are used)
};

struct ConditionReport {
    bool uncertifiable = false;
    bool separates = false;
    bool unique_component = false;
    bool boundary_connected = false;
    bool p_matches = false;
    bool site_condition = true;

    bool ok() const {
        return !uncertifiable && separates && unique_component && boundary_connected && p_matches && site_condition;
    }
    std::string first_failure() const;
};

class Uncertifiable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExtractionDefect : public std::runtime_error {
public:
    ExtractionDefect(const std::string& what, ConditionReport r) : std::runtime_error(what), report(r) {}
    ConditionReport report;
};

struct DenseCluster {
    Mode mode = Mode::bond;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;  // bond only
};

struct DenseInterface {
    Mode mode = Mode::bond;
    std::vector<EdgeId> P;  // sorted
    std::vector<EdgeId> boundary;
    std::vector<VertexId> P_sites;
    std::vector<VertexId> boundary_sites;
    std::size_t D_size = 0;
    VertexId anchor = lattice::kNone;  // a vertex of D

    std::size_t size() const { return mode == Mode::bond ? P.size() : P_sites.size(); }
    std::size_t boundary_size() const { return mode == Mode::bond ? boundary.size() : boundary_sites.size(); }
};

class Stamp {
public:
    explicit Stamp(std::size_t n = 0) : mark_(n, 0) {}
    void resize(std::size_t n) { mark_.assign(n, 0), epoch_ = 1; }
    void clear() {
        if (++epoch_ == 0) {
            std::fill(mark_.begin(), mark_.end(), 0);
            epoch_ = 1;
        }
    }
    bool test(std::size_t i) const { return mark_[i] == epoch_; }
    void set(std::size_t i) { mark_[i] = epoch_; }

private:
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 1;
};

// Reusable scratch space bound to one BoxGraph; not thread safe, so use one per worker.
class Engine {
public:
    explicit Engine(const BoxGraph& G);

    const BoxGraph& graph() const { return G_; }

    DenseInterface extract(const DenseCluster& C, bool certify = true);
    DenseInterface extract_planar(const DenseCluster& C);
    DenseInterface site_of_induced(std::span<const VertexId> D);
    ConditionReport check(Mode mode, std::span<const EdgeId> P, std::span<const EdgeId> boundary, VertexId o);

    // Vertices lying in finite components of G minus `boundary`; optionally only those in o's orbit.
    std::size_t enclosed_count(std::span<const EdgeId> boundary, bool center_orbit_only);
    std::vector<VertexId> enclosed(std::span<const EdgeId> boundary);
    // Whether v lies in a finite component of G minus `boundary`.
    bool encloses(std::span<const EdgeId> boundary, VertexId v);
    // Minimal edge cut of the finite component of G minus `boundary` that contains `anchor`,
    // in the cyclic order of its dual cycle; nullopt when the dual edges do not form one simple cycle.
    std::optional<std::vector<EdgeId>> dual_cut_cycle(std::span<const EdgeId> boundary, VertexId anchor);
    bool boundary_cohesive(std::span<const EdgeId> boundary);

    std::vector<EdgeId> induced_edges(std::span<const VertexId> vs);
    // Site-interface candidate from vertex sets: ∂P is every edge between the sets, P follows from ∂P.
    DenseInterface site_candidate(std::span<const VertexId> P_sites, std::span<const VertexId> boundary_sites);

private:
    enum class Region : std::uint8_t { unknown, outside, inside };

    void mark_box_of(std::span<const VertexId> vs);
    bool outside_box_of(VertexId v) const;
    // Flood G minus blocked vertices/edges from start; returns true when it escapes the bounding box.
    template <class Blocked>
    bool flood(VertexId start, Blocked&& blocked, std::vector<VertexId>& seen_out);
    void complete_site_sets(DenseInterface& I, std::span<const VertexId> D);
    std::vector<EdgeId> p_from_boundary(std::span<const EdgeId> boundary);

    const BoxGraph& G_;
    std::vector<std::int32_t> lo_, hi_;
    Stamp in_c_, in_ec_, in_bc_, in_dp_, in_d_, in_p_, seen_, closure_, visited_;
    std::vector<Region> region_;
    Stamp region_set_;
    std::vector<Region> face_region_;
    Stamp face_set_;
    std::vector<std::uint32_t> dir_pos_;
    std::vector<VertexId> queue_;
};

// Coordinate-level operations. Each builds a BoxGraph for `box`; use Engine in loops.
ConditionReport is_interface(const lattice::LatticeModel& L, const Interface& candidate, const lattice::Box& box,
                             const Vertex& o);
Interface extract_interface(const lattice::LatticeModel& L, const Cluster& C, const lattice::Box& box);
Interface site_interface_of_induced(const lattice::LatticeModel& L, std::span<const Vertex> D,
                                    const lattice::Box& box);
Interface extract_bond_interface_planar(const lattice::LatticeModel& L, const Cluster& C, const lattice::Box& box);
bool occurs(const Interface& I, const PercConfig& omega);
bool boundary_cohesion_check(const lattice::LatticeModel& L, const Interface& I);

struct InnerInterface {
    std::vector<Vertex> P;         // the site interface's boundary
    std::vector<Vertex> boundary;  // the site interface's P
    std::size_t size() const { return P.size(); }
    std::size_t boundary_size() const { return boundary.size(); }
};

InnerInterface to_inner(const lattice::LatticeModel& L, const Interface& I);
// Swaps back and runs the site-interface checker on the result.
ConditionReport is_inner_interface(const lattice::LatticeModel& L, const InnerInterface& inner,
                                   const lattice::Box& box, const Vertex& o);
std::vector<Edge> dual_cycle(const lattice::LatticeModel& L, const Interface& I, const lattice::Box& box);

Interface to_coordinates(const BoxGraph& G, const DenseInterface& I);
DenseInterface to_dense(const BoxGraph& G, const Interface& I);

nlohmann::ordered_json to_json(const lattice::LatticeModel& L, const Interface& I, const lattice::Box& box);
Interface interface_from_json(const nlohmann::json& j);

}  // namespace percolattice::interface
