#include "percolattice/interface.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

namespace percolattice::interface {

namespace {

using lattice::Incidence;
using lattice::kNone;

std::uint32_t dir_id(const BoxGraph& G, EdgeId e, VertexId head) { return 2 * e + (head == G.hi(e) ? 1u : 0u); }
EdgeId dir_edge(std::uint32_t d) { return d >> 1; }
VertexId dir_head(const BoxGraph& G, std::uint32_t d) { return (d & 1u) ? G.hi(d >> 1) : G.lo(d >> 1); }
VertexId dir_tail(const BoxGraph& G, std::uint32_t d) { return (d & 1u) ? G.lo(d >> 1) : G.hi(d >> 1); }

// Walks each basis cycle through the directed edge tail→head, starting at head and moving away from
// tail. step(edge, near, far) sees the edge leaving the current path end; it returns false to stop.
// Later steps close the cycle: the extension is then judged by its edge set, which still lies in the cycle.
template <class Step>
void walk(const BoxGraph& G, std::uint32_t d, Step&& step) {
    const EdgeId e = dir_edge(d);
    const VertexId head = dir_head(G, d), tail = dir_tail(G, d);
    for (CycleId c : G.cycles_of_edge(e)) {
        const auto vs = G.cycle_vertices(c);
        const auto es = G.cycle_edges(c);
        const int len = static_cast<int>(vs.size());
        int at = 0;
        while (vs[static_cast<std::size_t>(at)] != head) ++at;
        const int dir = vs[static_cast<std::size_t>((at - 1 + len) % len)] == tail ? 1 : -1;
        for (int k = 0; k < len; ++k) {
            const int i = ((at + dir * k) % len + len) % len;
            const int j = ((at + dir * (k + 1)) % len + len) % len;
            const EdgeId s = es[static_cast<std::size_t>(dir > 0 ? i : j)];
            if (!step(s, vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)])) break;
        }
    }
}

template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string ConditionReport::first_failure() const {
    if (uncertifiable) return "uncertifiable";
    if (!separates) return "separates";
    if (!unique_component) return "unique_component";
    if (!boundary_connected) return "boundary_connected";
    if (!p_matches) return "p_matches";
    if (!site_condition) return "site_condition";
    return "";
}

Engine::Engine(const BoxGraph& G)
    : G_(G),
      lo_(static_cast<std::size_t>(G.dimension())),
      hi_(static_cast<std::size_t>(G.dimension())),
      in_c_(G.vertex_count()),
      in_ec_(G.edge_count()),
      in_bc_(G.edge_count()),
      in_dp_(G.edge_count()),
      in_d_(G.vertex_count()),
      in_p_(G.edge_count()),
      seen_(G.vertex_count()),
      closure_(2 * G.edge_count()),
      visited_(G.edge_count()),
      region_(G.vertex_count(), Region::unknown),
      region_set_(G.vertex_count()),
      face_region_(G.cycle_count(), Region::unknown),
      face_set_(G.cycle_count()),
      dir_pos_(2 * G.edge_count(), 0) {}

void Engine::mark_box_of(std::span<const VertexId> vs) {
    const int d = G_.dimension();
    for (int i = 0; i < d; ++i) {
        lo_[static_cast<std::size_t>(i)] = std::numeric_limits<std::int32_t>::max();
        hi_[static_cast<std::size_t>(i)] = std::numeric_limits<std::int32_t>::min();
    }
    for (VertexId v : vs) {
        for (int i = 0; i < d; ++i) {
            const auto x = G_.coord(v, i);
            lo_[static_cast<std::size_t>(i)] = std::min(lo_[static_cast<std::size_t>(i)], x);
            hi_[static_cast<std::size_t>(i)] = std::max(hi_[static_cast<std::size_t>(i)], x);
        }
    }
}

// Outside the bounding box the complement of the object is connected and unbounded.
bool Engine::outside_box_of(VertexId v) const {
    if (G_.on_boundary(v)) return true;
    for (int i = 0; i < G_.dimension(); ++i) {
        const auto x = G_.coord(v, i);
        if (x < lo_[static_cast<std::size_t>(i)] || x > hi_[static_cast<std::size_t>(i)]) return true;
    }
    return false;
}

template <class Blocked>
bool Engine::flood(VertexId start, Blocked&& blocked, std::vector<VertexId>& seen_out) {
    seen_.clear();
    seen_out.clear();
    seen_.set(start);
    seen_out.push_back(start);
    for (std::size_t head = 0; head < seen_out.size(); ++head) {
        const VertexId v = seen_out[head];
        if (outside_box_of(v)) return true;
        for (const Incidence& inc : G_.incident(v)) {
            if (seen_.test(inc.to) || blocked(v, inc)) continue;
            seen_.set(inc.to);
            seen_out.push_back(inc.to);
        }
    }
    return false;
}

std::vector<EdgeId> Engine::induced_edges(std::span<const VertexId> vs) {
    in_c_.clear();
    for (VertexId v : vs) in_c_.set(v);
    std::vector<EdgeId> out;
    for (VertexId v : vs) {
        for (const Incidence& inc : G_.incident(v)) {
            if (inc.to > v && in_c_.test(inc.to)) out.push_back(inc.edge);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeId> Engine::p_from_boundary(std::span<const EdgeId> boundary) {
    in_dp_.clear();
    for (EdgeId e : boundary) in_dp_.set(e);
    in_p_.clear();
    std::vector<EdgeId> P;
    auto grow = [&](std::uint32_t j) {
        walk(G_, j, [&](EdgeId s, VertexId, VertexId) {
            if (in_dp_.test(s)) return false;
            if (!in_p_.test(s)) {
                in_p_.set(s);
                P.push_back(s);
            }
            return true;
        });
    };
    for (EdgeId e : boundary) {
        if (in_d_.test(G_.lo(e))) grow(dir_id(G_, e, G_.lo(e)));
        if (in_d_.test(G_.hi(e))) grow(dir_id(G_, e, G_.hi(e)));
    }
    std::sort(P.begin(), P.end());
    return P;
}

void Engine::complete_site_sets(DenseInterface& I, std::span<const VertexId> D) {
    I.P_sites.clear();
    I.boundary_sites.clear();
    for (EdgeId e : I.P) {
        I.P_sites.push_back(G_.lo(e));
        I.P_sites.push_back(G_.hi(e));
    }
    sort_unique(I.P_sites);
    // Degenerate cluster {v}: P has no edges, the site interface is ({v}, neighbours of v).
    if (I.P_sites.empty() && !D.empty()) I.P_sites.push_back(D.front());
    for (EdgeId e : I.boundary) {
        for (VertexId x : {G_.lo(e), G_.hi(e)}) {
            if (!std::binary_search(I.P_sites.begin(), I.P_sites.end(), x)) I.boundary_sites.push_back(x);
        }
    }
    sort_unique(I.boundary_sites);
}

DenseInterface Engine::extract(const DenseCluster& C, bool certify) {
    if (C.vertices.empty()) throw std::invalid_argument("empty cluster");
    for (VertexId v : C.vertices) {
        if (G_.depth(v) <= G_.box().margin) throw Uncertifiable("cluster neighbourhood reaches the margin zone");
    }
    in_c_.clear();
    for (VertexId v : C.vertices) in_c_.set(v);
    const std::vector<EdgeId> ec = C.mode == Mode::bond ? C.edges : induced_edges(C.vertices);
    in_ec_.clear();
    for (EdgeId e : ec) in_ec_.set(e);

    // ∂C: edges at the cluster that are not cluster edges.
    in_bc_.clear();
    std::vector<EdgeId> bc;
    for (VertexId v : C.vertices) {
        for (const Incidence& inc : G_.incident(v)) {
            if (in_ec_.test(inc.edge) || in_bc_.test(inc.edge)) continue;
            in_bc_.set(inc.edge);
            bc.push_back(inc.edge);
        }
    }

    // U: the unbounded component of G minus V(C), explored lazily from the outer ends of ∂C.
    mark_box_of(C.vertices);
    region_set_.clear();
    std::vector<VertexId> seen;
    auto region_of = [&](VertexId w) {
        if (region_set_.test(w)) return region_[w];
        const bool escaped = flood(w, [&](VertexId, const Incidence& inc) {
            return in_c_.test(inc.to) || (region_set_.test(inc.to) && region_[inc.to] == Region::outside);
        }, seen);
        bool out = escaped;
        if (!out) {
            for (VertexId x : seen) {
                for (const Incidence& inc : G_.incident(x)) {
                    if (region_set_.test(inc.to) && region_[inc.to] == Region::outside && !in_c_.test(inc.to)) {
                        out = true;
                    }
                }
            }
        }
        for (VertexId x : seen) {
            region_set_.set(x);
            region_[x] = out ? Region::outside : Region::inside;
        }
        return region_[w];
    };

    std::vector<std::uint32_t> queue;
    closure_.clear();
    for (EdgeId e : bc) {
        const VertexId a = G_.lo(e), b = G_.hi(e);
        const bool ca = in_c_.test(a), cb = in_c_.test(b);
        if (ca == cb) continue;
        const VertexId inner = ca ? a : b, outer = ca ? b : a;
        if (region_of(outer) != Region::outside) continue;
        const std::uint32_t d = dir_id(G_, e, inner);
        closure_.set(d);
        queue.push_back(d);
    }
    // Close ard(B, C) under 𝒫-paths avoiding ∂C.
    for (std::size_t k = 0; k < queue.size(); ++k) {
        walk(G_, queue[k], [&](EdgeId s, VertexId near, VertexId) {
            if (!in_bc_.test(s)) return true;
            const std::uint32_t nd = dir_id(G_, s, near);
            if (!closure_.test(nd)) {
                closure_.set(nd);
                queue.push_back(nd);
            }
            return false;
        });
    }

    DenseInterface I;
    I.mode = C.mode;
    I.anchor = C.vertices.front();
    for (std::uint32_t d : queue) I.boundary.push_back(dir_edge(d));
    sort_unique(I.boundary);

    in_dp_.clear();
    for (EdgeId e : I.boundary) in_dp_.set(e);
    std::vector<VertexId> D;
    if (flood(I.anchor, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, D)) {
        ConditionReport r;
        throw ExtractionDefect("extracted boundary does not enclose the cluster", r);
    }
    in_d_.clear();
    for (VertexId v : D) in_d_.set(v);
    I.D_size = D.size();
    I.P = p_from_boundary(I.boundary);
    if (C.mode == Mode::site) complete_site_sets(I, D);

    if (certify) {
        const ConditionReport r = check(C.mode, I.P, I.boundary, I.anchor);
        if (!r.ok()) throw ExtractionDefect("is_interface closure failure: " + r.first_failure(), r);
    }
    return I;
}

ConditionReport Engine::check(Mode mode, std::span<const EdgeId> P, std::span<const EdgeId> boundary, VertexId o) {
    ConditionReport r;
    std::vector<VertexId> ends;
    for (auto set : {P, boundary}) {
        for (EdgeId e : set) {
            if (G_.in_margin(G_.lo(e)) || G_.in_margin(G_.hi(e))) {
                r.uncertifiable = true;
                return r;
            }
        }
    }
    if (G_.in_margin(o)) {
        r.uncertifiable = true;
        return r;
    }
    if (boundary.empty()) return r;
    in_dp_.clear();
    for (EdgeId e : boundary) {
        in_dp_.set(e);
        ends.push_back(G_.lo(e));
        ends.push_back(G_.hi(e));
    }
    mark_box_of(ends);
    auto blocked = [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); };

    std::vector<VertexId> comp;
    r.separates = !flood(o, blocked, comp);

    // Finite components of G∖∂P that hold an end of every ∂P edge; any such component holds an end
    // of the first boundary edge.
    int found = 0;
    std::vector<VertexId> D;
    std::vector<VertexId> tried;
    for (VertexId x : {G_.lo(boundary[0]), G_.hi(boundary[0])}) {
        if (std::find(tried.begin(), tried.end(), x) != tried.end()) continue;
        if (flood(x, blocked, comp)) {
            for (VertexId y : comp) tried.push_back(y);
            continue;
        }
        for (VertexId y : comp) tried.push_back(y);
        const bool touches_all = std::all_of(boundary.begin(), boundary.end(), [&](EdgeId e) {
            return seen_.test(G_.lo(e)) || seen_.test(G_.hi(e));
        });
        if (touches_all) {
            ++found;
            D = comp;
        }
    }
    r.unique_component = found == 1;
    if (!r.unique_component) return r;
    in_d_.clear();
    for (VertexId v : D) in_d_.set(v);

    // ard(∂P, D) must be ∂P-connected.
    std::vector<std::uint32_t> J;
    closure_.clear();
    for (EdgeId e : boundary) {
        for (VertexId h : {G_.lo(e), G_.hi(e)}) {
            if (!in_d_.test(h)) continue;
            const std::uint32_t d = dir_id(G_, e, h);
            closure_.set(d);
            dir_pos_[d] = static_cast<std::uint32_t>(J.size());
            J.push_back(d);
        }
    }
    std::vector<std::uint32_t> parent(J.size());
    std::iota(parent.begin(), parent.end(), 0u);
    auto root = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::uint32_t i = 0; i < J.size(); ++i) {
        walk(G_, J[i], [&](EdgeId s, VertexId near, VertexId) {
            const std::uint32_t nd = dir_id(G_, s, near);
            if (closure_.test(nd)) parent[root(i)] = root(dir_pos_[nd]);
            return !in_dp_.test(s);
        });
    }
    std::size_t roots = 0;
    for (std::uint32_t i = 0; i < J.size(); ++i) roots += root(i) == i;
    r.boundary_connected = roots == 1;

    // P must be exactly the D-edges reachable from ard(∂P, D).
    std::vector<EdgeId> Q = p_from_boundary(boundary);
    std::vector<EdgeId> Ps(P.begin(), P.end());
    std::sort(Ps.begin(), Ps.end());
    r.p_matches = Q == Ps;

    if (mode == Mode::site) {
        seen_.clear();
        for (EdgeId e : P) {
            seen_.set(G_.lo(e));
            seen_.set(G_.hi(e));
        }
        r.site_condition = std::none_of(boundary.begin(), boundary.end(), [&](EdgeId e) {
            return seen_.test(G_.lo(e)) && seen_.test(G_.hi(e));
        });
    }
    return r;
}

DenseInterface Engine::extract_planar(const DenseCluster& C) {
    if (!G_.model().planar) throw std::invalid_argument("face tracing needs a planar lattice");
    if (C.vertices.empty()) throw std::invalid_argument("empty cluster");
    for (VertexId v : C.vertices) {
        if (G_.depth(v) <= G_.box().margin) throw Uncertifiable("cluster neighbourhood reaches the margin zone");
    }
    const std::vector<EdgeId> ec = C.mode == Mode::bond ? C.edges : induced_edges(C.vertices);
    in_ec_.clear();
    for (EdgeId e : ec) in_ec_.set(e);

    DenseInterface I;
    I.mode = C.mode;
    I.anchor = C.vertices.front();
    if (ec.empty()) {
        for (const Incidence& inc : G_.incident(I.anchor)) I.boundary.push_back(inc.edge);
        std::sort(I.boundary.begin(), I.boundary.end());
        I.D_size = 1;
        if (C.mode == Mode::site) complete_site_sets(I, std::span<const VertexId>(&I.anchor, 1));
        return I;
    }

    mark_box_of(C.vertices);
    face_set_.clear();
    std::vector<CycleId> faces;
    auto face_outside = [&](CycleId f) {
        if (face_set_.test(f)) return face_region_[f] == Region::outside;
        faces.assign(1, f);
        visited_.clear();
        std::vector<CycleId> stack{f};
        std::vector<CycleId> members;
        bool escaped = false;
        face_set_.set(f);
        face_region_[f] = Region::unknown;
        while (!stack.empty() && !escaped) {
            const CycleId g = stack.back();
            stack.pop_back();
            members.push_back(g);
            for (VertexId v : G_.cycle_vertices(g)) {
                if (outside_box_of(v)) escaped = true;
            }
            for (EdgeId e : G_.cycle_edges(g)) {
                if (in_ec_.test(e)) continue;
                for (CycleId h : G_.cycles_of_edge(e)) {
                    if (face_set_.test(h)) {
                        if (face_region_[h] == Region::outside) escaped = true;
                        continue;
                    }
                    face_set_.set(h);
                    face_region_[h] = Region::unknown;
                    stack.push_back(h);
                }
            }
        }
        for (CycleId g : stack) members.push_back(g);
        for (CycleId g : members) face_region_[g] = escaped ? Region::outside : Region::inside;
        return escaped;
    };

    in_p_.clear();
    for (EdgeId e : ec) {
        const auto fs = G_.cycles_of_edge(e);
        if (std::any_of(fs.begin(), fs.end(), face_outside)) {
            I.P.push_back(e);
            in_p_.set(e);
        }
    }
    std::sort(I.P.begin(), I.P.end());
    std::vector<VertexId> pv;
    for (EdgeId e : I.P) {
        pv.push_back(G_.lo(e));
        pv.push_back(G_.hi(e));
    }
    sort_unique(pv);
    for (VertexId v : pv) {
        for (const Incidence& inc : G_.incident(v)) {
            if (in_ec_.test(inc.edge)) continue;
            const auto fs = G_.cycles_of_edge(inc.edge);
            if (std::any_of(fs.begin(), fs.end(), face_outside)) I.boundary.push_back(inc.edge);
        }
    }
    sort_unique(I.boundary);

    in_dp_.clear();
    for (EdgeId e : I.boundary) in_dp_.set(e);
    std::vector<VertexId> D;
    mark_box_of(C.vertices);
    if (flood(I.anchor, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, D)) {
        throw ExtractionDefect("face-traced boundary does not enclose the cluster", ConditionReport{});
    }
    I.D_size = D.size();
    if (C.mode == Mode::site) complete_site_sets(I, D);
    return I;
}

DenseInterface Engine::site_of_induced(std::span<const VertexId> Dset) {
    if (!G_.model().triangulated) throw std::invalid_argument("site_interface_of_induced needs a triangulated lattice");
    if (Dset.empty()) throw std::invalid_argument("empty vertex set");
    for (VertexId v : Dset) {
        if (G_.depth(v) <= G_.box().margin) throw Uncertifiable("vertex set neighbourhood reaches the margin zone");
    }
    in_c_.clear();
    for (VertexId v : Dset) in_c_.set(v);
    mark_box_of(Dset);

    // D̄: D together with the finite components of its complement.
    region_set_.clear();
    std::vector<VertexId> closure(Dset.begin(), Dset.end());
    std::vector<VertexId> seen;
    for (VertexId v : Dset) {
        for (const Incidence& inc : G_.incident(v)) {
            const VertexId w = inc.to;
            if (in_c_.test(w) || region_set_.test(w)) continue;
            const bool escaped = flood(w, [&](VertexId, const Incidence& i2) {
                return in_c_.test(i2.to) || (region_set_.test(i2.to) && region_[i2.to] == Region::outside);
            }, seen);
            bool out = escaped;
            for (VertexId x : seen) {
                for (const Incidence& i2 : G_.incident(x)) {
                    if (!in_c_.test(i2.to) && region_set_.test(i2.to) && region_[i2.to] == Region::outside) out = true;
                }
            }
            for (VertexId x : seen) {
                region_set_.set(x);
                region_[x] = out ? Region::outside : Region::inside;
            }
            if (!out) closure.insert(closure.end(), seen.begin(), seen.end());
        }
    }
    sort_unique(closure);
    in_d_.clear();
    for (VertexId v : closure) in_d_.set(v);

    DenseInterface I;
    I.mode = Mode::site;
    I.anchor = Dset.front();
    I.D_size = closure.size();
    for (VertexId v : closure) {
        bool shell = false;
        for (const Incidence& inc : G_.incident(v)) {
            if (in_d_.test(inc.to)) continue;
            shell = true;
            I.boundary_sites.push_back(inc.to);
            I.boundary.push_back(inc.edge);
        }
        if (shell) I.P_sites.push_back(v);
    }
    sort_unique(I.boundary_sites);
    sort_unique(I.boundary);
    I.P = p_from_boundary(I.boundary);
    return I;
}

DenseInterface Engine::site_candidate(std::span<const VertexId> P_sites, std::span<const VertexId> boundary_sites) {
    DenseInterface I;
    I.mode = Mode::site;
    I.P_sites.assign(P_sites.begin(), P_sites.end());
    I.boundary_sites.assign(boundary_sites.begin(), boundary_sites.end());
    sort_unique(I.P_sites);
    sort_unique(I.boundary_sites);
    if (I.P_sites.empty()) return I;
    in_c_.clear();
    for (VertexId v : I.boundary_sites) in_c_.set(v);
    for (VertexId v : I.P_sites) {
        for (const Incidence& inc : G_.incident(v)) {
            if (in_c_.test(inc.to)) I.boundary.push_back(inc.edge);
        }
    }
    sort_unique(I.boundary);
    I.anchor = I.P_sites.front();
    in_dp_.clear();
    std::vector<VertexId> ends;
    for (EdgeId e : I.boundary) {
        in_dp_.set(e);
        ends.push_back(G_.lo(e));
        ends.push_back(G_.hi(e));
    }
    if (ends.empty()) ends.push_back(I.anchor);
    mark_box_of(ends);
    std::vector<VertexId> D;
    flood(I.anchor, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, D);
    in_d_.clear();
    for (VertexId v : D) in_d_.set(v);
    I.D_size = D.size();
    I.P = p_from_boundary(I.boundary);
    return I;
}

std::vector<VertexId> Engine::enclosed(std::span<const EdgeId> boundary) {
    in_dp_.clear();
    std::vector<VertexId> ends;
    for (EdgeId e : boundary) {
        in_dp_.set(e);
        ends.push_back(G_.lo(e));
        ends.push_back(G_.hi(e));
    }
    mark_box_of(ends);
    region_set_.clear();
    std::vector<VertexId> out;
    std::vector<VertexId> seen;
    for (VertexId x : ends) {
        if (region_set_.test(x)) continue;
        const bool escaped = flood(x, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, seen);
        // An escaped flood stops early; the unlabelled rest of that component escapes again if reached.
        for (VertexId y : seen) region_set_.set(y);
        if (!escaped) out.insert(out.end(), seen.begin(), seen.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Engine::encloses(std::span<const EdgeId> boundary, VertexId v) {
    in_dp_.clear();
    std::vector<VertexId> ends;
    for (EdgeId e : boundary) {
        in_dp_.set(e);
        ends.push_back(G_.lo(e));
        ends.push_back(G_.hi(e));
    }
    if (ends.empty()) return false;
    mark_box_of(ends);
    std::vector<VertexId> seen;
    return !flood(v, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, seen);
}

std::size_t Engine::enclosed_count(std::span<const EdgeId> boundary, bool center_orbit_only) {
    const auto vs = enclosed(boundary);
    if (!center_orbit_only) return vs.size();
    return static_cast<std::size_t>(
        std::count_if(vs.begin(), vs.end(), [&](VertexId v) { return G_.same_orbit_as_center(v); }));
}

std::optional<std::vector<EdgeId>> Engine::dual_cut_cycle(std::span<const EdgeId> boundary, VertexId anchor) {
    in_dp_.clear();
    std::vector<VertexId> ends;
    for (EdgeId e : boundary) {
        in_dp_.set(e);
        ends.push_back(G_.lo(e));
        ends.push_back(G_.hi(e));
    }
    mark_box_of(ends);
    std::vector<VertexId> D;
    if (flood(anchor, [&](VertexId, const Incidence& inc) { return in_dp_.test(inc.edge); }, D)) return std::nullopt;
    in_c_.clear();
    for (VertexId v : D) in_c_.set(v);
    mark_box_of(D);

    region_set_.clear();
    std::vector<VertexId> seen;
    std::vector<EdgeId> cut;
    for (VertexId v : D) {
        for (const Incidence& inc : G_.incident(v)) {
            const VertexId w = inc.to;
            if (in_c_.test(w)) continue;
            if (!region_set_.test(w)) {
                const bool escaped = flood(w, [&](VertexId, const Incidence& i2) {
                    return in_c_.test(i2.to) || (region_set_.test(i2.to) && region_[i2.to] == Region::outside);
                }, seen);
                bool out = escaped;
                for (VertexId x : seen) {
                    for (const Incidence& i2 : G_.incident(x)) {
                        if (!in_c_.test(i2.to) && region_set_.test(i2.to) && region_[i2.to] == Region::outside) {
                            out = true;
                        }
                    }
                }
                for (VertexId x : seen) {
                    region_set_.set(x);
                    region_[x] = out ? Region::outside : Region::inside;
                }
            }
            if (region_[w] == Region::outside) cut.push_back(inc.edge);
        }
    }
    sort_unique(cut);
    if (cut.empty()) return std::nullopt;

    std::unordered_map<CycleId, std::vector<EdgeId>> at_face;
    for (EdgeId e : cut) {
        const auto fs = G_.cycles_of_edge(e);
        if (fs.size() != 2) return std::nullopt;
        for (CycleId f : fs) at_face[f].push_back(e);
    }
    for (const auto& [f, es] : at_face) {
        if (es.size() != 2) return std::nullopt;
    }
    std::vector<EdgeId> order{cut.front()};
    CycleId face = G_.cycles_of_edge(cut.front())[1];
    EdgeId current = cut.front();
    while (true) {
        const auto& es = at_face[face];
        const EdgeId next = es[0] == current ? es[1] : es[0];
        if (next == cut.front()) break;
        order.push_back(next);
        if (order.size() > cut.size()) return std::nullopt;
        const auto fs = G_.cycles_of_edge(next);
        face = fs[0] == face ? fs[1] : fs[0];
        current = next;
    }
    if (order.size() != cut.size()) return std::nullopt;
    return order;
}

bool Engine::boundary_cohesive(std::span<const EdgeId> boundary) {
    if (boundary.size() <= 1) return true;
    const int radius = (G_.model().basis_bound + 1) / 2;
    // Multi-source BFS marks the ⌈t/2⌉-neighbourhood of V(∂P).
    std::vector<VertexId> layer;
    std::vector<VertexId> hood;
    seen_.clear();
    for (EdgeId e : boundary) {
        for (VertexId x : {G_.lo(e), G_.hi(e)}) {
            if (!seen_.test(x)) {
                seen_.set(x);
                layer.push_back(x);
                hood.push_back(x);
            }
        }
    }
    for (int step = 0; step < radius; ++step) {
        std::vector<VertexId> next;
        for (VertexId v : layer) {
            for (const Incidence& inc : G_.incident(v)) {
                if (seen_.test(inc.to)) continue;
                seen_.set(inc.to);
                next.push_back(inc.to);
                hood.push_back(inc.to);
            }
        }
        layer = std::move(next);
    }
    in_c_.clear();
    for (VertexId v : hood) in_c_.set(v);
    // Connectivity inside the neighbourhood, from one end of the first boundary edge.
    in_d_.clear();
    std::vector<VertexId> queue{G_.lo(boundary[0])};
    in_d_.set(queue[0]);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        for (const Incidence& inc : G_.incident(queue[k])) {
            if (!in_c_.test(inc.to) || in_d_.test(inc.to)) continue;
            in_d_.set(inc.to);
            queue.push_back(inc.to);
        }
    }
    return std::all_of(boundary.begin(), boundary.end(),
                       [&](EdgeId e) { return in_d_.test(G_.lo(e)) && in_d_.test(G_.hi(e)); });
}

Interface to_coordinates(const BoxGraph& G, const DenseInterface& I) {
    Interface out;
    out.mode = I.mode;
    for (EdgeId e : I.P) out.P.push_back(G.edge(e));
    for (EdgeId e : I.boundary) out.boundary.push_back(G.edge(e));
    for (VertexId v : I.P_sites) out.P_sites.push_back(G.vertex(v));
    for (VertexId v : I.boundary_sites) out.boundary_sites.push_back(G.vertex(v));
    std::sort(out.P.begin(), out.P.end());
    std::sort(out.boundary.begin(), out.boundary.end());
    std::sort(out.P_sites.begin(), out.P_sites.end());
    std::sort(out.boundary_sites.begin(), out.boundary_sites.end());
    out.D_size = I.D_size;
    return out;
}

namespace {

EdgeId need(const BoxGraph& G, const Edge& e) {
    const auto id = G.find(e);
    if (!id) throw Uncertifiable("edge outside the box or not a lattice edge");
    return *id;
}

VertexId need(const BoxGraph& G, const Vertex& v) {
    const auto id = G.find(v);
    if (!id) throw Uncertifiable("vertex outside the box: " + lattice::to_string(v));
    return *id;
}

DenseCluster dense_cluster(const BoxGraph& G, const Cluster& C) {
    DenseCluster out;
    out.mode = C.mode;
    for (const Vertex& v : C.vertices) out.vertices.push_back(need(G, v));
    if (C.mode == Mode::bond) {
        for (const Edge& e : C.edges) {
            out.edges.push_back(need(G, e));
            for (VertexId x : {G.lo(out.edges.back()), G.hi(out.edges.back())}) {
                if (std::find(out.vertices.begin(), out.vertices.end(), x) == out.vertices.end()) {
                    out.vertices.push_back(x);
                }
            }
        }
        std::sort(out.edges.begin(), out.edges.end());
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    }
    return out;
}

}  // namespace

DenseInterface to_dense(const BoxGraph& G, const Interface& I) {
    DenseInterface out;
    out.mode = I.mode;
    for (const Edge& e : I.P) out.P.push_back(need(G, e));
    for (const Edge& e : I.boundary) out.boundary.push_back(need(G, e));
    for (const Vertex& v : I.P_sites) out.P_sites.push_back(need(G, v));
    for (const Vertex& v : I.boundary_sites) out.boundary_sites.push_back(need(G, v));
    std::sort(out.P.begin(), out.P.end());
    std::sort(out.boundary.begin(), out.boundary.end());
    std::sort(out.P_sites.begin(), out.P_sites.end());
    std::sort(out.boundary_sites.begin(), out.boundary_sites.end());
    out.D_size = I.D_size;
    return out;
}

ConditionReport is_interface(const lattice::LatticeModel& L, const Interface& candidate, const lattice::Box& box,
                             const Vertex& o) {
    const BoxGraph G(L, box);
    Engine engine(G);
    DenseInterface I;
    try {
        I = to_dense(G, candidate);
    } catch (const Uncertifiable&) {
        ConditionReport r;
        r.uncertifiable = true;
        return r;
    }
    const auto oid = G.find(o);
    if (!oid) {
        ConditionReport r;
        r.uncertifiable = true;
        return r;
    }
    return engine.check(candidate.mode, I.P, I.boundary, *oid);
}

Interface extract_interface(const lattice::LatticeModel& L, const Cluster& C, const lattice::Box& box) {
    const BoxGraph G(L, box);
    Engine engine(G);
    return to_coordinates(G, engine.extract(dense_cluster(G, C)));
}

Interface site_interface_of_induced(const lattice::LatticeModel& L, std::span<const Vertex> D,
                                    const lattice::Box& box) {
    const BoxGraph G(L, box);
    Engine engine(G);
    std::vector<VertexId> ids;
    for (const Vertex& v : D) ids.push_back(need(G, v));
    return to_coordinates(G, engine.site_of_induced(ids));
}

Interface extract_bond_interface_planar(const lattice::LatticeModel& L, const Cluster& C, const lattice::Box& box) {
    const BoxGraph G(L, box);
    Engine engine(G);
    return to_coordinates(G, engine.extract_planar(dense_cluster(G, C)));
}

bool occurs(const Interface& I, const PercConfig& omega) {
    if (I.mode != omega.mode) throw std::invalid_argument("interface and configuration modes differ");
    if (I.mode == Mode::bond) {
        return std::all_of(I.P.begin(), I.P.end(), [&](const Edge& e) { return omega.occupied(e); }) &&
               std::none_of(I.boundary.begin(), I.boundary.end(), [&](const Edge& e) { return omega.occupied(e); });
    }
    return std::all_of(I.P_sites.begin(), I.P_sites.end(), [&](const Vertex& v) { return omega.occupied(v); }) &&
           std::none_of(I.boundary_sites.begin(), I.boundary_sites.end(),
                        [&](const Vertex& v) { return omega.occupied(v); });
}

namespace {

lattice::Box box_around(const lattice::LatticeModel& L, const Interface& I) {
    int far = 0;
    auto grow = [&](const Vertex& v) {
        for (int i = 0; i < v.dim; ++i) far = std::max(far, std::abs(v[i]));
    };
    for (const Edge& e : I.P) grow(e.a), grow(e.b);
    for (const Edge& e : I.boundary) grow(e.a), grow(e.b);
    for (const Vertex& v : I.P_sites) grow(v);
    for (const Vertex& v : I.boundary_sites) grow(v);
    return lattice::make_box(L, far + 2 * L.basis_bound + 2);
}

}  // namespace

bool boundary_cohesion_check(const lattice::LatticeModel& L, const Interface& I) {
    const BoxGraph G(L, box_around(L, I));
    Engine engine(G);
    const DenseInterface d = to_dense(G, I);
    return engine.boundary_cohesive(d.boundary);
}

InnerInterface to_inner(const lattice::LatticeModel& L, const Interface& I) {
    if (!L.triangulated) throw std::invalid_argument("inner interfaces need a triangulated lattice");
    if (I.mode != Mode::site) throw std::invalid_argument("inner interfaces come from site interfaces");
    return InnerInterface{I.boundary_sites, I.P_sites};
}

ConditionReport is_inner_interface(const lattice::LatticeModel& L, const InnerInterface& inner,
                                   const lattice::Box& box, const Vertex& o) {
    const BoxGraph G(L, box);
    Engine engine(G);
    std::vector<VertexId> P, B;
    try {
        for (const Vertex& v : inner.boundary) P.push_back(need(G, v));
        for (const Vertex& v : inner.P) B.push_back(need(G, v));
    } catch (const Uncertifiable&) {
        ConditionReport r;
        r.uncertifiable = true;
        return r;
    }
    const DenseInterface cand = engine.site_candidate(P, B);
    const auto oid = G.find(o);
    if (!oid) {
        ConditionReport r;
        r.uncertifiable = true;
        return r;
    }
    ConditionReport r = engine.check(Mode::site, cand.P, cand.boundary, *oid);
    // The vertex sets must be the ones the bond pair induces.
    DenseInterface induced = cand;
    std::vector<VertexId> D{cand.anchor};
    std::vector<VertexId> pv;
    for (EdgeId e : cand.P) pv.push_back(G.lo(e)), pv.push_back(G.hi(e));
    std::sort(pv.begin(), pv.end());
    pv.erase(std::unique(pv.begin(), pv.end()), pv.end());
    if (pv.empty()) pv.push_back(cand.anchor);
    std::vector<VertexId> bv;
    for (EdgeId e : cand.boundary) {
        for (VertexId x : {G.lo(e), G.hi(e)}) {
            if (!std::binary_search(pv.begin(), pv.end(), x)) bv.push_back(x);
        }
    }
    std::sort(bv.begin(), bv.end());
    bv.erase(std::unique(bv.begin(), bv.end()), bv.end());
    if (pv != cand.P_sites || bv != cand.boundary_sites) r.site_condition = false;
    return r;
}

std::vector<Edge> dual_cycle(const lattice::LatticeModel& L, const Interface& I, const lattice::Box& box) {
    if (!L.planar || I.mode != Mode::bond) throw std::invalid_argument("dual_cycle needs a planar bond interface");
    const BoxGraph G(L, box);
    Engine engine(G);
    const DenseInterface d = to_dense(G, I);
    if (d.boundary.empty()) throw std::invalid_argument("interface without boundary");
    // D holds an end of every boundary edge; take the end on P's side, or either end when P is empty.
    VertexId anchor = G.lo(d.boundary.front());
    if (!d.P.empty()) {
        anchor = G.lo(d.P.front());
    } else {
        std::vector<VertexId> ends;
        for (EdgeId e : d.boundary) ends.push_back(G.lo(e)), ends.push_back(G.hi(e));
        std::sort(ends.begin(), ends.end());
        std::size_t best = 0;
        for (std::size_t i = 0; i < ends.size();) {
            std::size_t j = i;
            while (j < ends.size() && ends[j] == ends[i]) ++j;
            if (j - i > best) best = j - i, anchor = ends[i];
            i = j;
        }
    }
    const auto cycle = engine.dual_cut_cycle(d.boundary, anchor);
    if (!cycle) throw ExtractionDefect("dual of the minimal edge cut is not a simple cycle", ConditionReport{});
    std::vector<Edge> out;
    for (EdgeId e : *cycle) out.push_back(lattice::dual_edge(L, G.edge(e)).edge);
    return out;
}

nlohmann::ordered_json to_json(const lattice::LatticeModel& L, const Interface& I, const lattice::Box& box) {
    auto coords = [](const Vertex& v) {
        std::vector<int> c(v.x.begin(), v.x.begin() + v.dim);
        return c;
    };
    nlohmann::ordered_json j;
    j["mode"] = std::string(to_string(I.mode));
    nlohmann::ordered_json P = nlohmann::ordered_json::array(), B = nlohmann::ordered_json::array();
    if (I.mode == Mode::bond) {
        for (const Edge& e : I.P) P.push_back({coords(e.a), coords(e.b)});
        for (const Edge& e : I.boundary) B.push_back({coords(e.a), coords(e.b)});
    } else {
        for (const Vertex& v : I.P_sites) P.push_back(coords(v));
        for (const Vertex& v : I.boundary_sites) B.push_back(coords(v));
    }
    j["P"] = P;
    j["boundary"] = B;
    j["lattice"] = lattice_name(L);
    j["box"] = {{"center", coords(box.center)}, {"radius", box.radius}, {"margin", box.margin}};
    return j;
}

Interface interface_from_json(const nlohmann::json& j) {
    auto vertex = [](const nlohmann::json& a) {
        Vertex v;
        v.dim = static_cast<std::uint8_t>(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) v.x[i] = a[i].get<int>();
        return v;
    };
    Interface I;
    I.mode = parse_mode(j.at("mode").get<std::string>());
    if (I.mode == Mode::bond) {
        for (const auto& e : j.at("P")) I.P.push_back(lattice::make_edge(vertex(e[0]), vertex(e[1])));
        for (const auto& e : j.at("boundary")) I.boundary.push_back(lattice::make_edge(vertex(e[0]), vertex(e[1])));
        return I;
    }
    // Site records carry the vertex sets only; the edge pair is rebuilt on the recorded box.
    const auto L = lattice::parse_lattice(j.at("lattice").get<std::string>());
    const auto& b = j.at("box");
    const lattice::Box box{vertex(b.at("center")), b.at("radius").get<int>(), b.at("margin").get<int>()};
    const BoxGraph G(L, box);
    std::vector<VertexId> P, B;
    for (const auto& v : j.at("P")) P.push_back(need(G, vertex(v)));
    for (const auto& v : j.at("boundary")) B.push_back(need(G, vertex(v)));
    Engine engine(G);
    return to_coordinates(G, engine.site_candidate(P, B));
}

}  // namespace percolattice::interface
