#include "percolattice/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace percolattice {

std::string_view to_string(Mode m) { return m == Mode::bond ? "bond" : "site"; }

Mode parse_mode(std::string_view s) {
    if (s == "bond") return Mode::bond;
    if (s == "site") return Mode::site;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected bond|site)");
}

namespace lattice {

namespace {

bool is_square_like(const LatticeModel& L) {
    return L.family == Family::CubicZd || L.family == Family::PlanarSquare;
}

bool is_triangle_like(const LatticeModel& L) {
    return L.family == Family::DiagonalTd || L.family == Family::PlanarTriangular;
}

int parity(const Vertex& v) { return (v[0] + v[1]) & 1; }

Vertex unit(int dim, int i, int sign = 1) {
    Vertex u = Vertex::origin(dim);
    u[i] = sign;
    return u;
}

void check_dim(const LatticeModel& L, const Vertex& v) {
    if (v.dim != L.dimension) {
        throw std::invalid_argument("dimension mismatch: vertex has " + std::to_string(v.dim) +
                                    " coordinates, lattice needs " + std::to_string(L.dimension));
    }
}

std::vector<Vertex> offsets(const LatticeModel& L, const Vertex& v) {
    const int d = L.dimension;
    std::vector<Vertex> out;
    if (L.family == Family::PlanarHexagonal) {
        out.push_back(Vertex::of({-1, 0}));
        out.push_back(parity(v) == 0 ? Vertex::of({0, 1}) : Vertex::of({0, -1}));
        out.push_back(Vertex::of({1, 0}));
        std::sort(out.begin(), out.end());
        return out;
    }
    for (int i = 0; i < d; ++i) {
        out.push_back(unit(d, i, 1));
        out.push_back(unit(d, i, -1));
    }
    if (is_triangle_like(L)) {
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                Vertex u = unit(d, i) + unit(d, j);
                out.push_back(u);
                out.push_back(Vertex::origin(d) - u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_range(const Vertex& v) {
    for (int i = 0; i < v.dim; ++i) {
        if (std::abs(v[i]) > kCoordLimit) throw std::overflow_error("coordinate out of range: " + to_string(v));
    }
}

}  // namespace

LatticeModel make_model(Family family, int dimension) {
    LatticeModel L;
    L.family = family;
    switch (family) {
        case Family::CubicZd:
        case Family::DiagonalTd:
            if (dimension < 2 || dimension > kMaxDim) {
                throw std::invalid_argument("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
            }
            L.dimension = dimension;
            L.triangulated = family == Family::DiagonalTd;
            L.basis_bound = L.triangulated ? 3 : 4;
            L.planar = dimension == 2;
            break;
        case Family::PlanarSquare:
            L.dimension = 2;
            L.basis_bound = 4;
            break;
        case Family::PlanarTriangular:
            L.dimension = 2;
            L.basis_bound = 3;
            L.triangulated = true;
            break;
        case Family::PlanarHexagonal:
            L.dimension = 2;
            L.basis_bound = 6;
            break;
    }
    return L;
}

LatticeModel parse_lattice(std::string_view s) {
    if (s == "sq") return make_model(Family::PlanarSquare);
    if (s == "sq*") {
        LatticeModel L = make_model(Family::PlanarSquare);
        L.dual_shift = true;
        return L;
    }
    if (s == "tri") return make_model(Family::PlanarTriangular);
    if (s == "hex") return make_model(Family::PlanarHexagonal);
    if (s.size() >= 2 && (s[0] == 'z' || s[0] == 't')) {
        const std::string digits(s.substr(1));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            const int d = std::stoi(digits);
            return make_model(s[0] == 'z' ? Family::CubicZd : Family::DiagonalTd, d);
        }
    }
    throw std::invalid_argument("unknown lattice '" + std::string(s) + "' (expected zD, tD, sq, tri or hex)");
}

std::string lattice_name(const LatticeModel& L) {
    switch (L.family) {
        case Family::CubicZd: return "z" + std::to_string(L.dimension);
        case Family::DiagonalTd: return "t" + std::to_string(L.dimension);
        case Family::PlanarSquare: return L.dual_shift ? "sq*" : "sq";
        case Family::PlanarTriangular: return "tri";
        case Family::PlanarHexagonal: return "hex";
    }
    return "?";
}

Vertex Vertex::of(std::initializer_list<std::int32_t> coords) {
    if (coords.size() > static_cast<std::size_t>(kMaxDim)) throw std::invalid_argument("too many coordinates");
    Vertex v;
    v.dim = static_cast<std::uint8_t>(coords.size());
    std::copy(coords.begin(), coords.end(), v.x.begin());
    return v;
}

Vertex Vertex::origin(int dim) {
    Vertex v;
    v.dim = static_cast<std::uint8_t>(dim);
    return v;
}

Vertex operator+(const Vertex& a, const Vertex& b) {
    Vertex r = a;
    for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
    return r;
}

Vertex operator-(const Vertex& a, const Vertex& b) {
    Vertex r = a;
    for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
    return r;
}

std::string to_string(const Vertex& v) {
    std::string s = "(";
    for (int i = 0; i < v.dim; ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

Edge make_edge(const Vertex& v, const Vertex& w) { return v < w ? Edge{v, w} : Edge{w, v}; }

std::vector<Edge> BasisCycle::edges() const {
    std::vector<Edge> out;
    out.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        out.push_back(make_edge(vertices[i], vertices[(i + 1) % vertices.size()]));
    }
    return out;
}

bool BasisCycle::contains(const Edge& e) const {
    const auto es = edges();
    return std::find(es.begin(), es.end(), e) != es.end();
}

bool BasisCycle::contains(const Vertex& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

Box make_box(const LatticeModel& L, int radius, int margin) {
    Box b;
    b.center = Vertex::origin(L.dimension);
    b.radius = radius;
    b.margin = margin < 0 ? L.basis_bound : margin;
    if (b.margin < L.basis_bound) throw std::invalid_argument("box margin must be at least t");
    return b;
}

std::vector<Vertex> neighbors(const LatticeModel& L, const Vertex& v) {
    check_dim(L, v);
    std::vector<Vertex> out;
    for (const Vertex& u : offsets(L, v)) {
        Vertex w = v + u;
        check_range(w);
        out.push_back(w);
    }
    return out;
}

bool adjacent(const LatticeModel& L, const Vertex& v, const Vertex& w) {
    const auto ns = neighbors(L, v);
    return std::find(ns.begin(), ns.end(), w) != ns.end();
}

std::vector<BasisCycle> anchored_cycles(const LatticeModel& L, const Vertex& v) {
    check_dim(L, v);
    const int d = L.dimension;
    std::vector<BasisCycle> out;
    if (L.family == Family::PlanarHexagonal) {
        if (parity(v) == 0) {
            BasisCycle c;
            for (auto [dx, dy] : {std::pair{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}}) {
                c.vertices.push_back(v + Vertex::of({dx, dy}));
            }
            out.push_back(std::move(c));
        }
        return out;
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const Vertex ei = unit(d, i), ej = unit(d, j);
            if (is_square_like(L)) {
                out.push_back(BasisCycle{{v, v + ei, v + ei + ej, v + ej}});
            } else {
                out.push_back(BasisCycle{{v, v + ei, v + ei + ej}});
                out.push_back(BasisCycle{{v, v + ej, v + ei + ej}});
            }
        }
    }
    for (const auto& c : out) {
        for (const auto& w : c.vertices) check_range(w);
    }
    return out;
}

namespace {

// Anchors of cycles that may contain v: v + {-2,-1,0}^d, in lexicographic order.
std::vector<Vertex> candidate_anchors(const Vertex& v) {
    std::vector<Vertex> out;
    const int d = v.dim;
    std::vector<int> delta(static_cast<std::size_t>(d), -2);
    while (true) {
        Vertex u = v;
        for (int i = 0; i < d; ++i) u[i] += delta[static_cast<std::size_t>(i)];
        out.push_back(u);
        int k = d - 1;
        while (k >= 0 && delta[static_cast<std::size_t>(k)] == 0) {
            delta[static_cast<std::size_t>(k)] = -2;
            --k;
        }
        if (k < 0) break;
        ++delta[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace

std::vector<BasisCycle> basis_cycles_through(const LatticeModel& L, const Edge& e) {
    check_dim(L, e.a);
    std::vector<BasisCycle> out;
    for (const Vertex& u : candidate_anchors(e.a)) {
        for (auto& c : anchored_cycles(L, u)) {
            if (c.contains(e)) out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<BasisCycle> basis_cycles_through(const LatticeModel& L, const Vertex& v) {
    check_dim(L, v);
    std::vector<BasisCycle> out;
    for (const Vertex& u : candidate_anchors(v)) {
        for (auto& c : anchored_cycles(L, u)) {
            if (c.contains(v)) out.push_back(std::move(c));
        }
    }
    return out;
}

bool p_path_reachable(const LatticeModel& L, const DirectedEdge& from, std::span<const DirectedEdge> targets,
                      const EdgeSet& forbidden) {
    const std::set<DirectedEdge> target_set(targets.begin(), targets.end());
    for (const BasisCycle& c : basis_cycles_through(L, from.undirected())) {
        const auto& vs = c.vertices;
        const int len = static_cast<int>(vs.size());
        const int at = static_cast<int>(std::find(vs.begin(), vs.end(), from.head) - vs.begin());
        const int dir = vs[static_cast<std::size_t>((at - 1 + len) % len)] == from.tail ? 1 : -1;
        for (int k = 0; k < len; ++k) {
            const Vertex& q = vs[static_cast<std::size_t>(((at + dir * k) % len + len) % len)];
            const Vertex& r = vs[static_cast<std::size_t>(((at + dir * (k + 1)) % len + len) % len)];
            if (target_set.count(DirectedEdge{r, q})) return true;
            if (forbidden.count(make_edge(q, r))) break;
        }
    }
    return false;
}

bool p_path_reachable(const LatticeModel& L, const Edge& from, std::span<const DirectedEdge> targets,
                      const EdgeSet& forbidden) {
    return p_path_reachable(L, DirectedEdge{from.a, from.b}, targets, forbidden) ||
           p_path_reachable(L, DirectedEdge{from.b, from.a}, targets, forbidden);
}

bool j_connected(const LatticeModel& L, std::span<const DirectedEdge> J, const EdgeSet& forbidden) {
    const std::size_t n = J.size();
    if (n <= 1) return true;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            const DirectedEdge target[1] = {J[j]};
            if (p_path_reachable(L, J[i], target, forbidden)) parent[find(i)] = find(j);
        }
    }
    const std::size_t root = find(0);
    for (std::size_t i = 1; i < n; ++i) {
        if (find(i) != root) return false;
    }
    return true;
}

LatticeModel dual_model(const LatticeModel& L) {
    if (!L.planar) throw std::invalid_argument("dual requires a planar lattice, got " + lattice_name(L));
    if (is_square_like(L)) {
        LatticeModel D = make_model(Family::PlanarSquare);
        D.dual_shift = !L.dual_shift;
        return D;
    }
    if (is_triangle_like(L)) return make_model(Family::PlanarHexagonal);
    return make_model(Family::PlanarTriangular);
}

Vertex face_label(const LatticeModel& L, const BasisCycle& face) {
    if (!L.planar) throw std::invalid_argument("faces are defined only for planar lattices");
    const Vertex least = *std::min_element(face.vertices.begin(), face.vertices.end());
    if (is_square_like(L)) {
        return L.dual_shift ? least + Vertex::of({1, 1}) : least;
    }
    if (is_triangle_like(L)) {
        const int a = least[0], b = least[1];
        const int type = face.contains(least + Vertex::of({1, 0})) ? 1 : 0;
        return Vertex::of({2 * a + type - b, b});
    }
    const int X = least[0], Y = least[1];
    return Vertex::of({(X + Y + 2) / 2, Y + 1});
}

DualEdge dual_edge(const LatticeModel& L, const Edge& e) {
    const LatticeModel D = dual_model(L);
    const auto faces = basis_cycles_through(L, e);
    if (faces.size() != 2) throw std::logic_error("planar edge must border exactly two faces");
    return DualEdge{D, make_edge(face_label(L, faces[0]), face_label(L, faces[1]))};
}

bool in_box(const Box& box, const Vertex& v) { return box_depth(box, v) >= 0; }

int box_depth(const Box& box, const Vertex& v) {
    int far = 0;
    for (int i = 0; i < v.dim; ++i) far = std::max(far, std::abs(v[i] - box.center[i]));
    return box.radius - far;
}

namespace {

template <class Blocked>
bool flood_to_boundary(const LatticeModel& L, const Box& box, const Vertex& start, Blocked&& edge_blocked) {
    if (!in_box(box, start)) throw std::invalid_argument("start vertex outside box");
    std::set<Vertex> seen{start};
    std::deque<Vertex> queue{start};
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        if (box_depth(box, v) == 0) return true;
        for (const Vertex& w : neighbors(L, v)) {
            if (!in_box(box, w) || seen.count(w) || edge_blocked(v, w)) continue;
            seen.insert(w);
            queue.push_back(w);
        }
    }
    return false;
}

}  // namespace

bool reaches_box_boundary(const LatticeModel& L, const Box& box, const VertexSet& blocked, const Vertex& start) {
    if (blocked.count(start)) return false;
    return flood_to_boundary(L, box, start, [&](const Vertex&, const Vertex& w) { return blocked.count(w) > 0; });
}

bool reaches_box_boundary(const LatticeModel& L, const Box& box, const EdgeSet& blocked, const Vertex& start) {
    return flood_to_boundary(L, box, start,
                             [&](const Vertex& v, const Vertex& w) { return blocked.count(make_edge(v, w)) > 0; });
}

bool same_orbit(const LatticeModel& L, const Vertex& v, const Vertex& w) {
    if (L.family == Family::PlanarHexagonal) return parity(v) == parity(w);
    return true;
}

}  // namespace lattice
}  // namespace percolattice
