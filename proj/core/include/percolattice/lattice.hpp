#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace percolattice {

enum class Mode : std::uint8_t { bond, site };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

namespace lattice {

inline constexpr int kMaxDim = 8;
// Coordinates beyond this magnitude are rejected rather than wrapped.
inline constexpr std::int32_t kCoordLimit = 1 << 24;

enum class Family : std::uint8_t { CubicZd, DiagonalTd, PlanarSquare, PlanarTriangular, PlanarHexagonal };

struct LatticeModel {
    Family family = Family::CubicZd;
    int dimension = 2;
    int basis_bound = 4;
    bool triangulated = false;
    bool planar = true;
    // Square lattice whose coordinates name the faces of another square lattice.
    bool dual_shift = false;

    friend bool operator==(const LatticeModel&, const LatticeModel&) = default;
};

LatticeModel make_model(Family family, int dimension = 2);
LatticeModel parse_lattice(std::string_view s);
std::string lattice_name(const LatticeModel& L);

struct Vertex {
    std::array<std::int32_t, kMaxDim> x{};
    std::uint8_t dim = 0;

    static Vertex of(std::initializer_list<std::int32_t> coords);
    static Vertex origin(int dim);

    std::int32_t operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
    std::int32_t& operator[](int i) { return x[static_cast<std::size_t>(i)]; }

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

Vertex operator+(const Vertex& a, const Vertex& b);
Vertex operator-(const Vertex& a, const Vertex& b);
std::string to_string(const Vertex& v);

struct Edge {
    Vertex a;  // a < b
    Vertex b;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

Edge make_edge(const Vertex& v, const Vertex& w);

struct DirectedEdge {
    Vertex tail;
    Vertex head;

    DirectedEdge reversed() const { return {head, tail}; }
    Edge undirected() const { return make_edge(tail, head); }

    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

struct BasisCycle {
    std::vector<Vertex> vertices;  // cyclic order; consecutive entries are adjacent

    std::vector<Edge> edges() const;
    bool contains(const Edge& e) const;
    bool contains(const Vertex& v) const;
    std::size_t length() const { return vertices.size(); }

    friend bool operator==(const BasisCycle&, const BasisCycle&) = default;
};

struct Box {
    Vertex center;
    int radius = 0;
    int margin = 0;
};

Box make_box(const LatticeModel& L, int radius, int margin = -1);

using EdgeSet = std::set<Edge>;
using VertexSet = std::set<Vertex>;

std::vector<Vertex> neighbors(const LatticeModel& L, const Vertex& v);
bool adjacent(const LatticeModel& L, const Vertex& v, const Vertex& w);

// Basis cycles whose lexicographically least vertex is v; every basis cycle has exactly one anchor.
std::vector<BasisCycle> anchored_cycles(const LatticeModel& L, const Vertex& v);
std::vector<BasisCycle> basis_cycles_through(const LatticeModel& L, const Edge& e);
std::vector<BasisCycle> basis_cycles_through(const LatticeModel& L, const Vertex& v);

bool p_path_reachable(const LatticeModel& L, const DirectedEdge& from, std::span<const DirectedEdge> targets,
                      const EdgeSet& forbidden);
bool p_path_reachable(const LatticeModel& L, const Edge& from, std::span<const DirectedEdge> targets,
                      const EdgeSet& forbidden);
bool j_connected(const LatticeModel& L, std::span<const DirectedEdge> J, const EdgeSet& forbidden);

struct DualEdge {
    LatticeModel model;
    Edge edge;
};

LatticeModel dual_model(const LatticeModel& L);
// Face label: the lexicographically least boundary vertex, mapped into the dual model's coordinates.
Vertex face_label(const LatticeModel& L, const BasisCycle& face);
DualEdge dual_edge(const LatticeModel& L, const Edge& e);

bool in_box(const Box& box, const Vertex& v);
int box_depth(const Box& box, const Vertex& v);

bool reaches_box_boundary(const LatticeModel& L, const Box& box, const VertexSet& blocked, const Vertex& start);
bool reaches_box_boundary(const LatticeModel& L, const Box& box, const EdgeSet& blocked, const Vertex& start);

// Same orbit under the translation group of L (all of Z^d except on the hexagonal lattice).
bool same_orbit(const LatticeModel& L, const Vertex& v, const Vertex& w);

}  // namespace lattice
}  // namespace percolattice
