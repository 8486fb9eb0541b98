#include "percolattice/enumerate.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace percolattice::enumerate {

using interface::DenseCluster;
using interface::DenseInterface;
using interface::Engine;
using interface::Interface;
using interface::Stamp;
using lattice::Incidence;

lattice::Box enumeration_box(const LatticeModel& L, int n_max) {
    // Representatives grow at most n_max steps from their root; extraction needs the 1-neighbourhood
    // clear of the margin, and hex roots sit one step off o.
    return lattice::make_box(L, std::max(n_max, 1) + L.basis_bound + 4);
}

std::vector<VertexId> orbit_roots(const BoxGraph& G) {
    std::vector<VertexId> roots{G.center()};
    if (G.model().family == lattice::Family::PlanarHexagonal) {
        Vertex step = Vertex::origin(2);
        step[0] = 1;
        roots.push_back(G.shifted(G.center(), step));
    }
    return roots;
}

AnimalWalker::AnimalWalker(const BoxGraph& G, Mode mode, int n_max)
    : G_(G), mode_(mode), n_max_(n_max), reached_(mode == Mode::bond ? G.edge_count() : G.vertex_count(), 0) {}

template <class F>
void AnimalWalker::for_neighbour_cells(std::uint32_t c, F&& f) const {
    if (mode_ == Mode::site) {
        for (const Incidence& inc : G_.incident(c)) f(inc.to);
        return;
    }
    for (VertexId v : {G_.lo(c), G_.hi(c)}) {
        for (const Incidence& inc : G_.incident(v)) {
            if (inc.edge != c) f(inc.edge);
        }
    }
}

void AnimalWalker::run(const Visit& visit, unsigned worker, unsigned workers) {
    worker_ = worker;
    workers_ = std::max(1u, workers);
    split_counter_ = 0;
    if (n_max_ < 1) return;
    for (VertexId r : orbit_roots(G_)) {
        std::vector<std::uint32_t> roots;
        if (mode_ == Mode::site) {
            roots.push_back(r);
        } else {
            for (const Incidence& inc : G_.incident(r)) {
                if (inc.to > r) roots.push_back(inc.edge);
            }
        }
        for (std::uint32_t root : roots) {
            root_ = root;
            reached_[root] = 1;
            std::vector<std::uint32_t> untried{root};
            grow(untried, visit);
            reached_[root] = 0;
        }
    }
}

void AnimalWalker::grow(std::vector<std::uint32_t>& untried, const Visit& visit) {
    const std::size_t split = static_cast<std::size_t>(std::min(n_max_, 3));
    while (!untried.empty()) {
        const std::uint32_t c = untried.back();
        untried.pop_back();
        animal_.push_back(c);
        const std::size_t size = animal_.size();
        bool mine = true;
        if (workers_ > 1) {
            if (size < split) mine = true;
            else if (size == split) mine = split_counter_++ % workers_ == worker_;
        }
        if (mine) {
            if (workers_ == 1 || size >= split || worker_ == 0) {
                if (counter_ && budget_ && counter_->fetch_add(1, std::memory_order_relaxed) >= budget_) {
                    throw BudgetExceeded("enumeration budget of " + std::to_string(budget_) + " objects exceeded");
                }
                visit(animal_);
            }
            if (size < static_cast<std::size_t>(n_max_)) {
                std::vector<std::uint32_t> next = untried;
                const std::size_t first_new = next.size();
                for_neighbour_cells(c, [&](std::uint32_t d) {
                    if (d > root_ && !reached_[d]) {
                        reached_[d] = 1;
                        next.push_back(d);
                    }
                });
                const std::vector<std::uint32_t> added(next.begin() + static_cast<std::ptrdiff_t>(first_new), next.end());
                grow(next, visit);
                for (std::uint32_t d : added) reached_[d] = 0;
            }
        }
        animal_.pop_back();
    }
}

namespace {

// Runs one AnimalWalker per worker, each with its own state from make_state, and returns the states in
// worker order.
template <class State, class Make, class OnCells>
std::vector<State> run_workers(const BoxGraph& G, Mode mode, const Options& opt, Make&& make_state, OnCells&& on_cells) {
    const unsigned workers = std::max(1u, opt.threads);
    std::vector<State> states;
    states.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) states.push_back(make_state());
    std::atomic<std::uint64_t> counter{0};
    std::vector<std::exception_ptr> errors(workers);
    auto body = [&](unsigned w) {
        try {
            AnimalWalker walker(G, mode, opt.n_max);
            walker.set_budget(&counter, opt.budget);
            walker.run([&](std::span<const std::uint32_t> cells) { on_cells(states[w], cells); }, w, workers);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return states;
}

struct AnimalScratch {
    Stamp vmark, emark, outside;
    std::vector<VertexId> vs;
};

std::string name_of(const LatticeModel& L) { return lattice::lattice_name(L); }

CountTable animal_table(const LatticeModel& L, Mode mode, const Options& opt) {
    const BoxGraph G(L, enumeration_box(L, opt.n_max));
    struct State {
        CountTable table;
        AnimalScratch s;
    };
    auto states = run_workers<State>(
        G, mode, opt,
        [&] {
            State st;
            st.s.vmark = Stamp(G.vertex_count());
            st.s.emark = Stamp(G.edge_count());
            st.s.outside = Stamp(G.vertex_count());
            return st;
        },
        [&](State& st, std::span<const std::uint32_t> cells) {
            auto& s = st.s;
            s.vmark.clear();
            s.vs.clear();
            int boundary = 0;
            if (mode == Mode::site) {
                for (std::uint32_t v : cells) s.vmark.set(v), s.vs.push_back(v);
                s.outside.clear();
                for (VertexId v : s.vs) {
                    for (const Incidence& inc : G.incident(v)) {
                        if (!s.vmark.test(inc.to) && !s.outside.test(inc.to)) {
                            s.outside.set(inc.to);
                            ++boundary;
                        }
                    }
                }
            } else {
                s.emark.clear();
                for (std::uint32_t e : cells) {
                    s.emark.set(e);
                    for (VertexId v : {G.lo(e), G.hi(e)}) {
                        if (!s.vmark.test(v)) s.vmark.set(v), s.vs.push_back(v);
                    }
                }
                for (VertexId v : s.vs) {
                    for (const Incidence& inc : G.incident(v)) {
                        // an edge leaving A is seen once; one with both ends in V(A) twice
                        if (s.emark.test(inc.edge)) continue;
                        boundary += s.vmark.test(inc.to) ? 1 : 2;
                    }
                }
                boundary /= 2;
            }
            const auto mult = static_cast<std::uint64_t>(
                std::count_if(s.vs.begin(), s.vs.end(), [&](VertexId v) { return G.same_orbit_as_center(v); }));
            st.table.add(static_cast<int>(cells.size()), boundary, mult);
        });
    CountTable t;
    t.object_class = ObjectClass::animal;
    t.mode = mode;
    t.lattice = name_of(L);
    t.n_max = opt.n_max;
    t.complete = true;
    t.certification = "exhaustive";
    for (const auto& st : states) t.merge(st.table);
    if (mode == Mode::bond) t.add(0, static_cast<int>(G.incident(G.center()).size()), 1);
    return t;
}

bool interface_less(const InterfaceClass& a, const InterfaceClass& b) {
    const auto ka = std::make_tuple(a.rep.size(), a.rep.boundary_size());
    const auto kb = std::make_tuple(b.rep.size(), b.rep.boundary_size());
    if (ka != kb) return ka < kb;
    if (a.rep.P != b.rep.P) return a.rep.P < b.rep.P;
    if (a.rep.P_sites != b.rep.P_sites) return a.rep.P_sites < b.rep.P_sites;
    return a.rep.boundary < b.rep.boundary;
}

lattice::Box origin_box(const LatticeModel& L, int n_max) {
    return lattice::make_box(L, 2 * std::max(n_max, 1) + L.basis_bound + 6);
}

}  // namespace

CountTable enumerate_site_animals(const LatticeModel& L, const Options& opt) {
    if (opt.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    return animal_table(L, Mode::site, opt);
}

CountTable enumerate_bond_animals(const LatticeModel& L, const Options& opt) {
    if (opt.n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    return animal_table(L, Mode::bond, opt);
}

void visit_interface_classes(const LatticeModel& L, Mode mode, const Options& opt, const ClassVisitor& visit) {
    if (opt.n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const BoxGraph G(L, enumeration_box(L, opt.n_max));
    struct State {
        unsigned worker = 0;
        std::unique_ptr<Engine> engine;
        Stamp vmark;
        DenseCluster C;
        std::vector<std::uint32_t> sorted;
    };
    auto consider = [&](State& st) {
        DenseInterface I = st.engine->extract(st.C, false);
        const auto& mine = mode == Mode::bond ? I.P : I.P_sites;
        if (mine != st.sorted) return;
        const auto r = st.engine->check(mode, I.P, I.boundary, I.anchor);
        if (!r.ok()) throw interface::ExtractionDefect("is_interface closure failure: " + r.first_failure(), r);
        const auto mult = st.engine->enclosed_count(I.boundary, true);
        if (mult > 0) visit(st.worker, *st.engine, I, mult);
    };
    unsigned next_worker = 0;
    auto make = [&] {
        State st;
        st.worker = next_worker++;
        st.engine = std::make_unique<Engine>(G);
        st.vmark = Stamp(G.vertex_count());
        st.C.mode = mode;
        return st;
    };
    run_workers<State>(G, mode, opt, make, [&](State& st, std::span<const std::uint32_t> cells) {
        st.sorted.assign(cells.begin(), cells.end());
        std::sort(st.sorted.begin(), st.sorted.end());
        st.C.vertices.clear();
        st.C.edges.clear();
        if (mode == Mode::site) {
            st.C.vertices.assign(cells.begin(), cells.end());
        } else {
            st.vmark.clear();
            st.C.edges = st.sorted;
            for (std::uint32_t e : cells) {
                for (VertexId v : {G.lo(e), G.hi(e)}) {
                    if (!st.vmark.test(v)) st.vmark.set(v), st.C.vertices.push_back(v);
                }
            }
        }
        consider(st);
    });
    if (mode == Mode::bond) {
        // The empty interface: the cluster {o}.
        next_worker = 0;
        State st = make();
        st.C.vertices = {G.center()};
        st.sorted.clear();
        consider(st);
    }
}

std::vector<InterfaceClass> interface_classes(const LatticeModel& L, Mode mode, const Options& opt) {
    std::vector<std::vector<InterfaceClass>> found(std::max(1u, opt.threads));
    visit_interface_classes(L, mode, opt, [&](unsigned w, Engine& engine, const DenseInterface& I, std::uint64_t mult) {
        found[w].push_back({interface::to_coordinates(engine.graph(), I), mult});
    });
    std::vector<InterfaceClass> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end(), interface_less);
    return all;
}

CountTable table_of(const LatticeModel& L, Mode mode, std::span<const InterfaceClass> classes, int n_max) {
    CountTable t;
    t.object_class = ObjectClass::interface;
    t.mode = mode;
    t.lattice = name_of(L);
    t.n_max = n_max;
    t.complete = true;
    t.certification = "fixed-point";
    for (const auto& c : classes) {
        t.add(static_cast<int>(c.rep.size()), static_cast<int>(c.rep.boundary_size()), c.multiplicity);
    }
    return t;
}

CountTable enumerate_interfaces(const LatticeModel& L, Mode mode, const Options& opt) {
    std::vector<CountTable> part(std::max(1u, opt.threads));
    visit_interface_classes(L, mode, opt, [&](unsigned w, Engine&, const DenseInterface& I, std::uint64_t mult) {
        part[w].add(static_cast<int>(I.size()), static_cast<int>(I.boundary_size()), mult);
    });
    CountTable t = table_of(L, mode, {}, opt.n_max);
    for (const auto& p : part) t.merge(p);
    return t;
}

std::vector<DenseInterface> interfaces_of_origin(const BoxGraph& G, std::span<const InterfaceClass> classes) {
    Engine engine(G);
    std::vector<DenseInterface> out;
    const Vertex o = G.vertex(G.center());
    for (const auto& c : classes) {
        const DenseInterface I = interface::to_dense(G, c.rep);
        for (VertexId w : engine.enclosed(I.boundary)) {
            if (!G.same_orbit_as_center(w)) continue;
            const Vertex shift = o - G.vertex(w);
            auto move_v = [&](VertexId v) {
                const VertexId s = G.shifted(v, shift);
                if (s == lattice::kNone) throw interface::Uncertifiable("translate leaves the box");
                return s;
            };
            auto move_e = [&](EdgeId e) { return G.edge_between(move_v(G.lo(e)), move_v(G.hi(e))); };
            DenseInterface J;
            J.mode = I.mode;
            J.D_size = I.D_size;
            for (EdgeId e : I.P) J.P.push_back(move_e(e));
            for (EdgeId e : I.boundary) J.boundary.push_back(move_e(e));
            for (VertexId v : I.P_sites) J.P_sites.push_back(move_v(v));
            for (VertexId v : I.boundary_sites) J.boundary_sites.push_back(move_v(v));
            J.anchor = G.center();
            out.push_back(std::move(J));
        }
    }
    return out;
}

CountTable enumerate_site_interfaces_triangulated(const LatticeModel& L, const Options& opt, PlateauReport* report) {
    if (!L.triangulated) throw std::invalid_argument("direct site-interface enumeration needs a triangulated lattice");
    if (opt.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    int grow_to = opt.n_max + 1;
    while (true) {
        Options o2 = opt;
        o2.n_max = grow_to;
        const BoxGraph G(L, enumeration_box(L, grow_to));
        struct State {
            std::unique_ptr<Engine> engine;
            std::vector<std::pair<std::vector<Vertex>, InterfaceClass>> found;
            int max_d = 0;
        };
        auto states = run_workers<State>(
            G, Mode::site, o2,
            [&] {
                State st;
                st.engine = std::make_unique<Engine>(G);
                return st;
            },
            [&](State& st, std::span<const std::uint32_t> cells) {
                const DenseInterface I = st.engine->site_of_induced(cells);
                if (I.D_size != cells.size()) return;  // D has holes; its hole-free version is visited separately
                if (I.P_sites.size() > static_cast<std::size_t>(opt.n_max)) return;
                const auto r = st.engine->check(Mode::site, I.P, I.boundary, I.anchor);
                if (!r.ok()) throw interface::ExtractionDefect("is_interface closure failure: " + r.first_failure(), r);
                const auto mult = st.engine->enclosed_count(I.boundary, true);
                st.max_d = std::max(st.max_d, static_cast<int>(cells.size()));
                InterfaceClass c{interface::to_coordinates(G, I), mult};
                // canonical key: P_sites relative to its least vertex
                std::vector<Vertex> key;
                for (const Vertex& v : c.rep.P_sites) key.push_back(v - c.rep.P_sites.front());
                st.found.emplace_back(std::move(key), std::move(c));
            });
        std::set<std::vector<Vertex>> seen;
        CountTable t;
        t.object_class = ObjectClass::interface;
        t.mode = Mode::site;
        t.lattice = name_of(L);
        t.n_max = opt.n_max;
        int max_d = 0;
        for (auto& st : states) {
            max_d = std::max(max_d, st.max_d);
            for (auto& [key, c] : st.found) {
                if (!seen.insert(key).second) continue;
                t.add(static_cast<int>(c.rep.size()), static_cast<int>(c.rep.boundary_size()), c.multiplicity);
            }
        }
        if (max_d < grow_to) {
            t.complete = true;
            t.certification = "plateau: no interface with |P| <= " + std::to_string(opt.n_max) + " from |D| = " +
                              std::to_string(grow_to);
            if (report) *report = {opt.n_max, max_d, grow_to, true};
            return t;
        }
        grow_to = max_d + 1;
    }
}

CountTable enumerate_multi_interfaces(const LatticeModel& L, Mode mode, const Options& opt, int max_parts,
                                      MultiReport* report) {
    if (max_parts < 1 || max_parts > 3) throw std::invalid_argument("multi-interfaces: 1 to 3 parts");
    // Every positioned interface of o is held in memory; beyond this the pair scan outgrows a desk machine.
    if (opt.n_max > kMultiMaxN) {
        throw BudgetExceeded("multi-interface enumeration is limited to n_max <= " + std::to_string(kMultiMaxN));
    }
    const auto classes = interface_classes(L, mode, opt);
    const BoxGraph G(L, origin_box(L, opt.n_max));
    const auto all = interfaces_of_origin(G, classes);
    Engine engine(G);

    struct Item {
        int n, m;
        std::vector<std::uint32_t> support;
        std::vector<VertexId> inside;
    };
    std::vector<Item> items;
    for (const auto& I : all) {
        Item it{static_cast<int>(I.size()), static_cast<int>(I.boundary_size()), {}, engine.enclosed(I.boundary)};
        if (mode == Mode::bond) {
            it.support = I.P;
            it.support.insert(it.support.end(), I.boundary.begin(), I.boundary.end());
        } else {
            it.support = I.P_sites;
            it.support.insert(it.support.end(), I.boundary_sites.begin(), I.boundary_sites.end());
        }
        std::sort(it.support.begin(), it.support.end());
        items.push_back(std::move(it));
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tie(a.n, a.m, a.support) < std::tie(b.n, b.m, b.support);
    });
    auto disjoint = [](const Item& a, const Item& b) {
        auto i = a.support.begin(), j = b.support.begin();
        while (i != a.support.end() && j != b.support.end()) {
            if (*i == *j) return false;
            *i < *j ? ++i : ++j;
        }
        return true;
    };
    auto within = [](const Item& a, const Item& b) {
        return std::includes(b.inside.begin(), b.inside.end(), a.inside.begin(), a.inside.end());
    };
    auto nested = [&](const Item& a, const Item& b) { return within(a, b) || within(b, a); };

    CountTable t;
    t.object_class = ObjectClass::multi_interface;
    t.mode = mode;
    t.lattice = name_of(L);
    t.n_max = opt.n_max;
    t.complete = true;
    t.certification = "fixed-point";
    MultiReport rep;
    const int N = opt.n_max;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Item& a = items[i];
        t.add(a.n, a.m, 1);
        ++rep.collections;
        if (max_parts < 2) continue;
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const Item& b = items[j];
            if (a.n + b.n > N) break;  // items are sorted by size
            if (!disjoint(a, b)) continue;
            t.add(a.n + b.n, a.m + b.m, 1);
            ++rep.collections;
            nested(a, b) ? ++rep.nested : ++rep.not_nested;
            if (max_parts < 3) continue;
            for (std::size_t k = j + 1; k < items.size(); ++k) {
                const Item& c = items[k];
                if (a.n + b.n + c.n > N) break;
                if (!disjoint(a, c) || !disjoint(b, c)) continue;
                t.add(a.n + b.n + c.n, a.m + b.m + c.m, 1);
                ++rep.collections;
                nested(a, b) && nested(a, c) && nested(b, c) ? ++rep.nested : ++rep.not_nested;
            }
        }
    }
    if (report) *report = rep;
    return t;
}

CountTable enumerate_inner_interfaces(const LatticeModel& L, const Options& opt) {
    if (!L.triangulated) throw std::invalid_argument("inner interfaces need a triangulated lattice");
    CountTable t;
    t.object_class = ObjectClass::inner_interface;
    t.mode = Mode::site;
    t.lattice = name_of(L);
    t.n_max = opt.n_max;
    t.complete = true;
    t.certification = "site interfaces with |P| <= " + std::to_string(opt.n_max);
    for (const auto& c : interface_classes(L, Mode::site, opt)) {
        const auto inner = interface::to_inner(L, c.rep);
        t.add(static_cast<int>(inner.size()), static_cast<int>(inner.boundary_size()), c.multiplicity);
    }
    return t;
}

}  // namespace percolattice::enumerate
