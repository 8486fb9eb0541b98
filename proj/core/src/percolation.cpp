#include "percolattice/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "percolattice/growth.hpp"

namespace percolattice::percolation {

using interface::DenseCluster;
using interface::DenseInterface;
using interface::Engine;
using interface::Stamp;
using lattice::Incidence;

namespace {

// Runs fn(acc, sample) for every sample, samples dealt round-robin to workers; accumulators come back
// in worker order so integer merges are independent of scheduling.
template <class Acc, class Init, class Fn>
std::vector<Acc> run_samples(std::uint64_t samples, unsigned threads, Init&& init, Fn&& fn) {
    const unsigned T = std::max(1u, threads);
    std::vector<Acc> accs;
    for (unsigned w = 0; w < T; ++w) accs.push_back(init());
    std::vector<std::exception_ptr> errors(T);
    auto work = [&](unsigned w) {
        try {
            for (std::uint64_t s = w; s < samples; s += T) fn(accs[w], s);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < T; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return accs;
}

struct Scratch {
    Stamp seen_v, seen_e;
    explicit Scratch(const BoxGraph& G) : seen_v(G.vertex_count()), seen_e(G.edge_count()) {}
};

// BFS cluster of `start`. With stop_at_margin the growth ends as soon as a vertex at depth <= margin
// joins; otherwise the whole cluster is collected and only flagged.
template <class Occ>
OriginCluster grow(const BoxGraph& G, Mode mode, VertexId start, const Occ& occupied, Scratch& s,
                   bool stop_at_margin = true, std::size_t cap = SIZE_MAX) {
    OriginCluster out;
    out.cluster.mode = mode;
    if (mode == Mode::site && !occupied(start)) {
        out.empty = true;
        return out;
    }
    s.seen_v.clear();
    s.seen_e.clear();
    auto& vs = out.cluster.vertices;
    auto& es = out.cluster.edges;
    s.seen_v.set(start);
    vs.push_back(start);
    const int margin = G.box().margin;
    for (std::size_t head = 0; head < vs.size(); ++head) {
        const VertexId v = vs[head];
        if (G.depth(v) <= margin) {
            out.reaches_margin = true;
            if (stop_at_margin) return out;
        }
        for (const Incidence& inc : G.incident(v)) {
            if (mode == Mode::bond) {
                if (s.seen_e.test(inc.edge) || !occupied(inc.edge)) continue;
                s.seen_e.set(inc.edge);
                es.push_back(inc.edge);
                if (es.size() > cap) {
                    out.capped = true;
                    return out;
                }
            } else if (s.seen_v.test(inc.to) || !occupied(inc.to)) {
                continue;
            }
            if (!s.seen_v.test(inc.to)) {
                s.seen_v.set(inc.to);
                vs.push_back(inc.to);
                if (mode == Mode::site && vs.size() > cap) {
                    out.capped = true;
                    return out;
                }
            }
        }
    }
    return out;
}

double table_poly(const CountTable& T, int n, double p) {
    T.require_row(n);
    double s = 0;
    for (const auto& [m, c] : T.row(n)) s += static_cast<double>(c) * std::pow(p, n) * std::pow(1 - p, m);
    return s;
}

bool geodesic_axis(const LatticeModel& L) {
    return L.family != lattice::Family::PlanarHexagonal && !L.dual_shift;
}

// Vertices carrying an interface: V(P), or the lone vertex of an empty bond interface.
std::vector<VertexId> support(const BoxGraph& G, const DenseInterface& I) {
    if (I.mode == Mode::site) return I.P_sites;
    if (I.P.empty()) return {I.anchor};
    std::vector<VertexId> vs;
    for (EdgeId e : I.P) vs.push_back(G.lo(e)), vs.push_back(G.hi(e));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// Pairs (vertex, owner) sorted; distinct owners on one vertex are overlaps.
std::uint64_t count_overlaps(std::vector<std::pair<VertexId, std::uint32_t>>& owned) {
    std::sort(owned.begin(), owned.end());
    std::uint64_t k = 0;
    for (std::size_t i = 1; i < owned.size(); ++i) {
        k += owned[i].first == owned[i - 1].first && owned[i].second != owned[i - 1].second;
    }
    return k;
}

int default_radius(const LatticeModel& L, int n_cap) { return 3 * std::max(n_cap, 1) + L.basis_bound + 8; }

void require_open_p(double p) {
    if (!(p > 0 && p < 1)) throw std::domain_error("p must lie in (0,1)");
}

}  // namespace

McEstimate frequency(std::uint64_t hits, std::uint64_t n) {
    if (n == 0) return {};
    const double f = static_cast<double>(hits) / static_cast<double>(n);
    const double se = n > 1 ? std::sqrt(f * (1 - f) / static_cast<double>(n - 1)) : 0.0;
    return {f, se, n};
}

PercConfig sample_config(std::shared_ptr<const BoxGraph> G, Mode mode, double p, std::uint64_t seed,
                         std::uint64_t sample) {
    if (!(p >= 0 && p <= 1)) throw std::domain_error("p must lie in [0,1]");
    PercConfig w;
    w.mode = mode;
    w.p = p;
    w.seed = seed;
    const std::size_t n = mode == Mode::bond ? G->edge_count() : G->vertex_count();
    const LazyOccupancy occ(p, seed, sample);
    w.occupancy.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.occupancy[i] = occ(static_cast<std::uint32_t>(i));
    w.graph = std::move(G);
    return w;
}

PercConfig sample_config(const LatticeModel& L, const lattice::Box& box, Mode mode, double p, std::uint64_t seed,
                         std::uint64_t sample) {
    return sample_config(std::make_shared<const BoxGraph>(L, box), mode, p, seed, sample);
}

OriginCluster origin_cluster(const PercConfig& omega) {
    const BoxGraph& G = *omega.graph;
    Scratch s(G);
    return grow(G, omega.mode, G.center(), [&](std::uint32_t i) { return omega.occupied(i); }, s);
}

double exact_pmf(const CountTable& T, int n, double p) {
    if (T.object_class != ObjectClass::animal) throw std::invalid_argument("exact_pmf needs an animal table");
    if (T.mode == Mode::site && n == 0) return 1 - p;
    return table_poly(T, n, p);
}

double expected_Nn(const CountTable& T, int n, double p) {
    if (T.object_class != ObjectClass::interface) throw std::invalid_argument("expected_Nn needs an interface table");
    return table_poly(T, n, p);
}

Sandwich s_o_sandwich(const CountTable& T, int n, double p) {
    if (!geodesic_axis(lattice::parse_lattice(T.lattice))) {
        throw std::invalid_argument("the sandwich constants are only known on z#/t# lattices");
    }
    const double e = expected_Nn(T, n, p);
    return {p * e / (n + 1), e};
}

OccurringInterfaces count_occurring_interfaces(const PercConfig& omega, Engine& engine) {
    const BoxGraph& G = *omega.graph;
    if (&engine.graph() != &G) throw std::invalid_argument("engine bound to another box graph");
    const auto occ = [&](std::uint32_t i) { return omega.occupied(i); };
    Scratch s(G);
    Stamp done(G.vertex_count());
    const VertexId o = G.center();
    auto e1 = lattice::Vertex::origin(G.dimension());
    e1[0] = 1;

    OccurringInterfaces out;
    std::vector<std::pair<VertexId, std::uint32_t>> owned;
    std::uint32_t index = 0;
    for (VertexId v = o; v != lattice::kNone && G.depth(v) > G.box().margin; v = G.shifted(v, e1)) {
        if (done.test(v)) continue;
        auto c = grow(G, omega.mode, v, occ, s, false);
        if (c.empty) continue;
        for (VertexId u : c.cluster.vertices) done.set(u);
        if (c.reaches_margin) {
            ++out.discarded;
            continue;
        }
        DenseInterface I;
        try {
            I = engine.extract(c.cluster, false);
        } catch (const interface::Uncertifiable&) {
            ++out.discarded;
            continue;
        }
        if (!engine.encloses(I.boundary, o)) continue;
        const int n = static_cast<int>(I.size());
        ++out.by_size[n];
        out.sizes.emplace_back(n, static_cast<int>(I.boundary_size()));
        for (VertexId u : support(G, I)) owned.emplace_back(u, index);
        ++index;
    }
    out.overlaps = count_overlaps(owned);
    return out;
}

ConfigAudit audit_config(const PercConfig& omega, Engine& engine) {
    const BoxGraph& G = *omega.graph;
    const auto occ = [&](std::uint32_t i) { return omega.occupied(i); };
    const auto vacant_vertex = [&](VertexId v) { return omega.mode == Mode::site && !omega.occupied(v); };
    const auto open_edge = [&](EdgeId e) {
        return omega.mode == Mode::bond ? omega.occupied(e) : omega.occupied(G.lo(e)) && omega.occupied(G.hi(e));
    };
    Scratch s(G);
    Stamp done(G.vertex_count()), in_c(G.vertex_count()), in_ce(G.edge_count());
    ConfigAudit a;
    std::vector<std::pair<VertexId, std::uint32_t>> owned;
    std::uint32_t index = 0;
    for (VertexId v = 0; v < G.vertex_count(); ++v) {
        if (done.test(v) || vacant_vertex(v)) continue;
        auto c = grow(G, omega.mode, v, occ, s, false);
        for (VertexId u : c.cluster.vertices) done.set(u);
        ++a.clusters;
        if (c.reaches_margin) {
            ++a.discarded;
            continue;
        }
        DenseInterface I;
        try {
            I = engine.extract(c.cluster, true);
        } catch (const interface::Uncertifiable&) {
            ++a.discarded;
            continue;
        } catch (const interface::ExtractionDefect&) {
            ++a.not_interface;
            continue;
        }
        ++a.certified;
        in_c.clear();
        in_ce.clear();
        for (VertexId u : c.cluster.vertices) in_c.set(u);
        for (EdgeId e : c.cluster.edges) in_ce.set(e);
        bool inside = true, on_boundary = true, occurs = true;
        if (omega.mode == Mode::bond) {
            for (EdgeId e : I.P) inside &= in_ce.test(e), occurs &= omega.occupied(e);
        } else {
            for (VertexId u : I.P_sites) inside &= in_c.test(u), occurs &= omega.occupied(u);
            for (VertexId u : I.boundary_sites) occurs &= !omega.occupied(u);
        }
        for (EdgeId e : I.boundary) {
            const bool touches = in_c.test(G.lo(e)) || in_c.test(G.hi(e));
            on_boundary &= touches && !open_edge(e);
            if (omega.mode == Mode::bond) occurs &= !omega.occupied(e);
        }
        a.p_outside_c += !inside;
        a.boundary_outside += !on_boundary;
        a.not_occurring += !occurs;
        for (VertexId u : support(G, I)) owned.emplace_back(u, index);
        ++index;
    }
    a.overlaps = count_overlaps(owned);
    return a;
}

SizeDistribution cluster_size_mc(const LatticeModel& L, Mode mode, int n_cap, const McParams& mc) {
    const int radius = mc.box_radius > 0 ? mc.box_radius : n_cap + L.basis_bound + 4;
    const BoxGraph G(L, lattice::make_box(L, radius));
    struct Acc {
        Scratch s;
        std::vector<std::uint64_t> hits;
        std::uint64_t larger = 0, discarded = 0;
    };
    const auto accs = run_samples<Acc>(
        mc.samples, mc.threads, [&] { return Acc{Scratch(G), std::vector<std::uint64_t>(n_cap + 1), 0, 0}; },
        [&](Acc& a, std::uint64_t sample) {
            const LazyOccupancy occ(mc.p, mc.seed, sample);
            const auto c = grow(G, mode, G.center(), occ, a.s, true, static_cast<std::size_t>(n_cap));
            if (c.capped) {
                ++a.larger;
            } else if (c.reaches_margin) {
                ++a.discarded;
            } else {
                ++a.hits[c.size()];
            }
        });
    SizeDistribution d;
    d.samples = mc.samples;
    std::vector<std::uint64_t> hits(n_cap + 1);
    for (const auto& a : accs) {
        for (int n = 0; n <= n_cap; ++n) hits[n] += a.hits[n];
        d.larger += a.larger;
        d.discarded += a.discarded;
    }
    for (int n = 0; n <= n_cap; ++n) d.freq.push_back(frequency(hits[n], mc.samples - d.discarded));
    return d;
}

SizeDistribution interface_size_mc(const LatticeModel& L, Mode mode, int n_cap, const McParams& mc) {
    const int radius = mc.box_radius > 0 ? mc.box_radius : default_radius(L, n_cap);
    const BoxGraph G(L, lattice::make_box(L, radius));
    struct Acc {
        Scratch s;
        std::unique_ptr<Engine> engine;
        std::vector<std::uint64_t> hits;
        std::uint64_t larger = 0, discarded = 0;
    };
    const auto accs = run_samples<Acc>(
        mc.samples, mc.threads,
        [&] { return Acc{Scratch(G), std::make_unique<Engine>(G), std::vector<std::uint64_t>(n_cap + 1), 0, 0}; },
        [&](Acc& a, std::uint64_t sample) {
            const LazyOccupancy occ(mc.p, mc.seed, sample);
            const auto c = grow(G, mode, G.center(), occ, a.s, true);
            if (c.empty) {
                ++a.larger;
                return;
            }
            if (c.reaches_margin) {
                ++a.discarded;
                return;
            }
            const auto n = a.engine->extract(c.cluster, false).size();
            if (n <= static_cast<std::size_t>(n_cap)) {
                ++a.hits[n];
            } else {
                ++a.larger;
            }
        });
    SizeDistribution d;
    d.samples = mc.samples;
    std::vector<std::uint64_t> hits(n_cap + 1);
    for (const auto& a : accs) {
        for (int n = 0; n <= n_cap; ++n) hits[n] += a.hits[n];
        d.larger += a.larger;
        d.discarded += a.discarded;
    }
    for (int n = 0; n <= n_cap; ++n) d.freq.push_back(frequency(hits[n], mc.samples - d.discarded));
    return d;
}

OccurrenceMc occurrence_mc(const LatticeModel& L, Mode mode, double eps, const McParams& mc) {
    require_open_p(mc.p);
    const int radius = mc.box_radius > 0 ? mc.box_radius : 16;
    const auto G = std::make_shared<const BoxGraph>(L, lattice::make_box(L, radius));
    const growth::RatioWindow band(growth::r_of_p(mc.p), eps);
    const bool bound_applies = geodesic_axis(L);
    struct Acc {
        std::unique_ptr<Engine> engine;
        OccurrenceMc r;
    };
    const auto accs = run_samples<Acc>(
        mc.samples, mc.threads, [&] { return Acc{std::make_unique<Engine>(*G), {}}; },
        [&](Acc& a, std::uint64_t sample) {
            const auto omega = sample_config(G, mode, mc.p, mc.seed, sample);
            const auto occ = count_occurring_interfaces(omega, *a.engine);
            ++a.r.samples;
            a.r.overlaps += occ.overlaps;
            a.r.discarded_clusters += occ.discarded;
            bool violated = false;
            for (const auto& [n, k] : occ.by_size) violated |= bound_applies && k > static_cast<std::uint64_t>(n) + 1;
            a.r.bound_violations += violated;
            std::map<int, std::pair<int, int>> xy;
            for (const auto& [n, m] : occ.sizes) {
                // The ratio is undefined for the empty interface; it is counted but never outside the band.
                const auto [lo, hi] = band.range(n);
                auto& [x, y] = xy[n];
                x += n > 0 && (m < lo || m > hi);
                ++y;
            }
            for (const auto& [n, v] : xy) {
                auto& t = a.r.by_size[n];
                const double x = v.first, y = v.second;
                t.sx += x, t.sy += y, t.sxx += x * x, t.syy += y * y, t.sxy += x * y;
            }
        });
    OccurrenceMc out;
    for (const auto& a : accs) {
        out.samples += a.r.samples;
        out.bound_violations += a.r.bound_violations;
        out.overlaps += a.r.overlaps;
        out.discarded_clusters += a.r.discarded_clusters;
        for (const auto& [n, t] : a.r.by_size) {
            auto& u = out.by_size[n];
            u.sx += t.sx, u.sy += t.sy, u.sxx += t.sxx, u.syy += t.syy, u.sxy += t.sxy;
        }
    }
    return out;
}

std::vector<DeviationRow> large_deviation_stats(const LatticeModel& L, Mode mode, std::span<const int> n_list,
                                                double eps, const McParams& mc) {
    return large_deviation_stats(occurrence_mc(L, mode, eps, mc), n_list);
}

std::vector<DeviationRow> large_deviation_stats(const OccurrenceMc& occ, std::span<const int> n_list) {
    const double N = static_cast<double>(occ.samples);
    std::vector<DeviationRow> rows;
    for (const int n : n_list) {
        DeviationRow r;
        r.n = n;
        r.fraction = std::nan("");
        const auto it = occ.by_size.find(n);
        if (it != occ.by_size.end() && it->second.sy > 0) {
            const auto& t = it->second;
            r.support = static_cast<std::uint64_t>(t.sy);
            r.fraction = t.sx / t.sy;
            // Delta-method stderr of a ratio of sample means.
            const double ybar = t.sy / N;
            const double resid = t.sxx - 2 * r.fraction * t.sxy + r.fraction * r.fraction * t.syy;
            r.std_error = N > 1 ? std::sqrt(std::max(0.0, resid) / (N * (N - 1))) / ybar : 0.0;
        }
        r.low_support = r.support < 30;
        rows.push_back(r);
    }
    return rows;
}

std::vector<DeviationRow> large_deviation_exact(const CountTable& T, double p, double eps, std::span<const int> n_list) {
    require_open_p(p);
    const growth::RatioWindow band(growth::r_of_p(p), eps);
    std::vector<DeviationRow> rows;
    for (const int n : n_list) {
        const double e = expected_Nn(T, n, p);
        const auto [lo, hi] = band.range(n);
        double inside = 0;
        for (const auto& [m, c] : T.row(n)) {
            if (m >= lo && m <= hi) inside += static_cast<double>(c) * std::pow(p, n) * std::pow(1 - p, m);
        }
        DeviationRow r;
        r.n = n;
        r.fraction = e > 0 ? (e - inside) / e : 0.0;
        r.support = T.row_total(n);
        r.low_support = r.support == 0;
        rows.push_back(r);
    }
    return rows;
}

double decay_root(const CountTable& T, int n, double p) {
    if (n < 1) throw std::domain_error("decay rate needs n >= 1");
    if (T.row_total(n) == 0) throw std::domain_error("row " + std::to_string(n) + " has zero probability");
    return std::pow(table_poly(T, n, p), 1.0 / n);
}

double lipschitz_bound(const CountTable& T, int n, double p, double q) {
    double c = 0;
    for (const double x : {p, q}) {
        for (const auto& [m, k] : T.row(n)) c = std::max(c, std::abs(n / x - m / (1 - x)) / n);
    }
    const double d = std::abs(p - q);
    return c * std::max(decay_root(T, n, p), decay_root(T, n, q)) * std::exp(c * d) * d;
}

CheckReport decay_lipschitz_check(const CountTable& T, std::span<const double> p_grid, int n_max) {
    CheckReport rep;
    rep.check = "decay_lipschitz";
    rep.lattice = T.lattice;
    rep.mode = std::string(to_string(T.mode));
    rep.params["class"] = std::string(to_string(T.object_class));
    rep.params["n_max"] = n_max;
    rep.params["grid_points"] = p_grid.size();
    for (int n = 1; n <= n_max; ++n) {
        double worst = 0;
        for (std::size_t i = 1; i < p_grid.size(); ++i) {
            const double p = p_grid[i - 1], q = p_grid[i];
            const double diff = std::abs(decay_root(T, n, p) - decay_root(T, n, q));
            const double bound = lipschitz_bound(T, n, p, q);
            worst = std::max(worst, diff / bound);
            if (diff > bound * (1 + 1e-12)) rep.fail_with({{"n", n}, {"p", p}, {"q", q}, {"diff", diff}, {"bound", bound}});
        }
        rep.details.push_back({{"n", n}, {"max_diff_over_bound", worst}});
    }
    return rep;
}

std::vector<McEstimate> crossing_probability(const LatticeModel& L, Mode mode, std::span<const int> radii,
                                             const McParams& mc) {
    std::vector<McEstimate> out;
    for (const int R : radii) {
        const BoxGraph G(L, lattice::make_box(L, R));
        struct Acc {
            Stamp seen_v, seen_e;
            std::vector<VertexId> stack;
            std::uint64_t hits = 0;
        };
        const auto accs = run_samples<Acc>(
            mc.samples, mc.threads, [&] { return Acc{Stamp(G.vertex_count()), Stamp(G.edge_count()), {}, 0}; },
            [&](Acc& a, std::uint64_t sample) {
                const LazyOccupancy occ(mc.p, mc.seed, sample);
                const VertexId o = G.center();
                if (mode == Mode::site && !occ(o)) return;
                a.seen_v.clear();
                a.stack.assign(1, o);
                a.seen_v.set(o);
                while (!a.stack.empty()) {
                    const VertexId v = a.stack.back();
                    a.stack.pop_back();
                    if (G.on_boundary(v)) {
                        ++a.hits;
                        return;
                    }
                    for (const Incidence& inc : G.incident(v)) {
                        if (a.seen_v.test(inc.to)) continue;
                        if (mode == Mode::bond ? !occ(inc.edge) : !occ(inc.to)) continue;
                        a.seen_v.set(inc.to);
                        a.stack.push_back(inc.to);
                    }
                }
            });
        std::uint64_t hits = 0;
        for (const auto& a : accs) hits += a.hits;
        out.push_back(frequency(hits, mc.samples));
    }
    return out;
}

}  // namespace percolattice::percolation
