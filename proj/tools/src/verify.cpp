#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "commands.hpp"
#include "percolattice/enumerate.hpp"
#include "percolattice/growth.hpp"
#include "percolattice/percolation.hpp"
#include "percolattice/version.hpp"

namespace percolattice::cli {

namespace {

using lattice::BoxGraph;
using lattice::LatticeModel;

struct Invariant {
    std::string suite;
    std::string name;
    bool pass = true;
    std::uint64_t count = 0;  // objects examined
    std::string detail;
};

class Verdict {
public:
    explicit Verdict(std::string suite) : suite_(std::move(suite)) {}
    void add(std::string name, bool pass, std::uint64_t count, std::string detail = {}) {
        fmt::print("  [{}] {}.{} ({} checked){}{}\n", pass ? "pass" : "FAIL", suite_, name, count,
                   detail.empty() ? "" : ": ", detail);
        items.push_back({suite_, std::move(name), pass, count, std::move(detail)});
    }
    std::vector<Invariant> items;

private:
    std::string suite_;
};

LatticeModel L_of(const char* s) { return lattice::parse_lattice(s); }

void lattice_suite(Verdict& v) {
    std::uint64_t cycles = 0, bad_cycles = 0, pairs = 0, asym = 0;
    for (const char* name : {"z2", "z3", "t2", "t3", "sq", "sq*", "tri", "hex"}) {
        const auto L = L_of(name);
        const BoxGraph G(L, lattice::make_box(L, L.basis_bound + 2));
        for (lattice::VertexId x = 0; x < G.vertex_count(); ++x) {
            if (G.depth(x) < 2) continue;
            const auto vx = G.vertex(x);
            for (const auto& c : lattice::anchored_cycles(L, vx)) {
                ++cycles;
                bool ok = static_cast<int>(c.length()) <= L.basis_bound && c.length() >= 3;
                for (std::size_t i = 0; i < c.length(); ++i) ok &= lattice::adjacent(L, c.vertices[i], c.vertices[(i + 1) % c.length()]);
                bad_cycles += !ok;
            }
            for (const auto& w : lattice::neighbors(L, vx)) {
                ++pairs;
                const auto back = lattice::neighbors(L, w);
                asym += std::find(back.begin(), back.end(), vx) == back.end();
            }
        }
    }
    v.add("basis_cycles_bounded", bad_cycles == 0, cycles, bad_cycles ? fmt::format("{} malformed", bad_cycles) : "");
    v.add("adjacency_symmetric", asym == 0, pairs);

    std::uint64_t edges = 0, uncovered = 0, lost = 0;
    for (const char* name : {"z2", "t2", "z3", "tri", "hex"}) {
        const auto L = L_of(name);
        const BoxGraph G(L, lattice::make_box(L, L.basis_bound + 1));
        for (lattice::EdgeId e = 0; e < G.edge_count(); ++e) {
            if (G.depth(G.lo(e)) < L.basis_bound || G.depth(G.hi(e)) < L.basis_bound) continue;
            ++edges;
            uncovered += lattice::basis_cycles_through(L, G.edge(e)).empty();
            const auto found = G.find(G.edge(e));
            lost += !found || *found != e;
        }
    }
    v.add("edges_in_basis_cycles", uncovered == 0, edges);
    v.add("box_graph_index_roundtrip", lost == 0, edges);

    std::uint64_t duals = 0, broken = 0;
    for (const char* name : {"sq", "tri", "hex"}) {
        const auto L = L_of(name);
        const BoxGraph G(L, lattice::make_box(L, L.basis_bound + 3));
        for (lattice::EdgeId e = 0; e < G.edge_count(); ++e) {
            if (G.depth(G.lo(e)) < L.basis_bound + 1 || G.depth(G.hi(e)) < L.basis_bound + 1) continue;
            ++duals;
            const auto d = lattice::dual_edge(L, G.edge(e));
            const auto dd = lattice::dual_edge(d.model, d.edge);
            broken += !(dd.model == L && dd.edge == G.edge(e));
        }
    }
    v.add("dual_involution", broken == 0, duals);
}

void enumerate_suite(Verdict& v) {
    const auto z2 = L_of("z2"), tri = L_of("tri");
    const auto site = enumerate::enumerate_site_animals(z2, {6});
    const auto bond = enumerate::enumerate_bond_animals(z2, {5});
    const std::vector<std::uint64_t> a_site{1, 4, 18, 76, 315, 1296}, a_bond{4, 18, 88, 439, 2224};
    bool ok = true;
    for (int n = 1; n <= 6; ++n) ok &= site.row_total(n) == a_site[n - 1];
    for (int n = 0; n <= 4; ++n) ok &= bond.row_total(n + 1) == a_bond[n];
    v.add("anchored_animal_totals", ok, 11);

    const auto I1 = enumerate::enumerate_interfaces(z2, Mode::bond, {5, 1});
    const auto I3 = enumerate::enumerate_interfaces(z2, Mode::bond, {5, 3});
    v.add("thread_count_invariance", I1 == I3, I1.entries.size());
    v.add("singleton_rows", I1.at(0, 4) == 1 && enumerate::enumerate_site_animals(tri, {1}).at(1, 6) == 1, 2);

    const auto fixed = enumerate::enumerate_interfaces(tri, Mode::site, {6});
    const auto plateau = enumerate::enumerate_site_interfaces_triangulated(tri, {6});
    v.add("plateau_matches_fixed_point", fixed.entries == plateau.entries && plateau.complete, fixed.entries.size());

    std::stringstream ss;
    write_csv(ss, fixed);
    auto back = read_csv(ss);
    apply_sidecar(back, sidecar(fixed, kVersion));
    v.add("csv_roundtrip", back == fixed, fixed.entries.size());

    bool stopped = false;
    try {
        enumerate::enumerate_interfaces(z2, Mode::bond, {8, 1, 1000});
    } catch (const enumerate::BudgetExceeded&) {
        stopped = true;
    }
    v.add("budget_enforced", stopped, 1);
}

void interface_suite(Verdict& v, bool sabotage) {
    std::uint64_t total = 0, failed = 0;
    std::string first;
    std::uint64_t planar = 0, planar_bad = 0, induced = 0, induced_bad = 0;
    struct Case {
        const char* lattice;
        Mode mode;
        double p;
    };
    for (const Case c : {Case{"z2", Mode::bond, 0.45}, Case{"z2", Mode::site, 0.55}, Case{"z3", Mode::bond, 0.22},
                         Case{"t2", Mode::site, 0.45}, Case{"sq", Mode::bond, 0.5}}) {
        const auto L = L_of(c.lattice);
        const auto G = std::make_shared<const BoxGraph>(L, lattice::make_box(L, L.dimension == 2 ? 12 : 7));
        interface::Engine engine(*G);
        for (std::uint64_t s = 0; s < 250; ++s) {
            const auto omega = percolation::sample_config(G, c.mode, c.p, 11, s);
            const auto oc = percolation::origin_cluster(omega);
            if (oc.empty || oc.reaches_margin) continue;
            const auto I = engine.extract(oc.cluster, false);
            auto P = I.P;
            if (sabotage && !P.empty()) P.pop_back();
            const auto rep = engine.check(c.mode, P, I.boundary, I.anchor);
            ++total;
            if (!rep.ok()) {
                if (!failed) first = rep.first_failure();
                ++failed;
            }
            if (c.mode == Mode::bond && L.planar) {
                const auto J = engine.extract_planar(oc.cluster);
                ++planar;
                planar_bad += J.P != I.P || J.boundary != I.boundary;
            }
            if (c.mode == Mode::site && L.triangulated) {
                const auto J = engine.site_of_induced(oc.cluster.vertices);
                ++induced;
                induced_bad += J.P_sites != I.P_sites || J.boundary_sites != I.boundary_sites;
            }
        }
    }
    v.add("is_interface_closure", failed == 0, total,
          failed ? fmt::format("{} of {} extracted pairs rejected, first by {}", failed, total, first) : "");
    v.add("planar_face_tracing_agrees", planar_bad == 0, planar);
    v.add("prop_connected_agrees", induced_bad == 0, induced);

    const auto z2 = L_of("z2");
    const auto classes = enumerate::interface_classes(z2, Mode::bond, {8});
    const BoxGraph G(z2, lattice::make_box(z2, 2 * 8 + z2.basis_bound + 6));
    interface::Engine engine(G);
    std::uint64_t cycles = 0, not_cycle = 0;
    for (const auto& I : enumerate::interfaces_of_origin(G, classes)) {
        ++cycles;
        not_cycle += !engine.dual_cut_cycle(I.boundary, I.anchor).has_value();
    }
    v.add("dual_boundary_is_simple_cycle", not_cycle == 0, cycles);

    const auto tri = L_of("tri");
    const auto tri_classes = enumerate::interface_classes(tri, Mode::site, {5});
    const auto box = lattice::make_box(tri, 2 * 5 + tri.basis_bound + 6);
    const BoxGraph T(tri, box);
    std::uint64_t inner = 0, inner_bad = 0;
    for (const auto& I : enumerate::interfaces_of_origin(T, tri_classes)) {
        ++inner;
        const auto c = interface::to_coordinates(T, I);
        inner_bad += !interface::is_inner_interface(tri, interface::to_inner(tri, c), box, box.center).ok();
    }
    v.add("inner_interface_roundtrip", inner_bad == 0, inner);
}

std::uint64_t brute_partitions(int n, int largest) {
    if (n == 0) return 1;
    std::uint64_t s = 0;
    for (int k = std::min(n, largest); k >= 1; --k) s += brute_partitions(n - k, k);
    return s;
}

void growth_suite(Verdict& v) {
    std::uint64_t pts = 0;
    double worst_dual = 0, worst_p = 0, worst_inv = 0;
    for (int k = 1; k <= 100; ++k) {
        const double r = 0.1 * k;
        worst_dual = std::max(worst_dual, std::abs(growth::f_of_r(r) - std::pow(growth::f_of_r(1 / r), r)));
        const double p = growth::p_of_r(r);
        worst_p = std::max(worst_p, std::abs(growth::f_of_r(growth::r_of_p(p)) * p * std::pow(1 - p, growth::r_of_p(p)) - 1));
        worst_inv = std::max(worst_inv, std::abs(growth::r_of_p(growth::p_of_r(r)) - r));
        ++pts;
    }
    v.add("f_duality_identity", worst_dual <= 1e-9, pts, fmt::format("max deviation {:.2e}", worst_dual));
    v.add("f_r_p_identity", worst_p <= 1e-12, pts, fmt::format("max deviation {:.2e}", worst_p));
    v.add("r_p_inverse", worst_inv <= 1e-12, pts);

    const auto z2 = L_of("z2"), tri = L_of("tri");
    const auto Tb = enumerate::enumerate_interfaces(z2, Mode::bond, {8});
    const auto Ts = enumerate::enumerate_interfaces(tri, Mode::site, {6});
    const auto grid = growth::standard_p_grid();
    const auto ob = growth::occurrence_bound_check(Tb, grid);
    const auto os = growth::occurrence_bound_check(Ts, grid);
    v.add("occurrence_bound_exact", ob.pass && os.pass, 2 * grid.size() * 8);

    std::vector<growth::RatioWindow> windows;
    for (double r : growth::standard_r_grid()) windows.emplace_back(r, 0.5);
    v.add("occurrence_tie_out", growth::occurrence_tie_out(Tb, windows).pass, windows.size());

    const auto ch = growth::cheeger_report(Tb, growth::Rational(1, 2));
    bool under = true;
    for (const auto& r : growth::cheeger_interface_estimate(Tb)) under &= r.p_bound <= 2.0 / 3 + 1e-15;
    v.add("cheeger_floor_and_peierls", ch.pass && under, static_cast<std::uint64_t>(Tb.n_max));

    const auto inner = enumerate::enumerate_inner_interfaces(tri, {6});
    v.add("duality_transpose", growth::duality_table_check(Ts, inner).pass, Ts.entries.size());

    bool parts = true;
    for (int n = 0; n <= 30; ++n) parts &= growth::partition_count(n) == brute_partitions(n, n);
    v.add("partitions_vs_brute_force", parts, 31);

    bool full = true;
    // The ratio window has no meaning for the empty interface, so row 0 is left out.
    for (int n = 1; n <= Tb.n_max; ++n) full &= growth::window_count(Tb, n, growth::RatioWindow(1, 100)) == Tb.row_total(n);
    v.add("full_window_is_row_total", full, static_cast<std::uint64_t>(Tb.n_max));
}

void percolation_suite(Verdict& v) {
    const auto z2 = L_of("z2"), t2 = L_of("t2");
    const auto G = std::make_shared<const BoxGraph>(z2, lattice::make_box(z2, 10));
    const auto none = percolation::sample_config(G, Mode::bond, 0.0, 5);
    const auto all = percolation::sample_config(G, Mode::bond, 1.0, 5);
    const bool extremes = std::all_of(none.occupancy.begin(), none.occupancy.end(), [](auto b) { return !b; }) &&
                          std::all_of(all.occupancy.begin(), all.occupancy.end(), [](auto b) { return b; });
    v.add("sampler_extremes", extremes, none.occupancy.size());

    const std::vector<int> radii{8, 16};
    const auto c1 = percolation::crossing_probability(z2, Mode::site, radii, {0.6, 400, 9, 0, 1});
    const auto c3 = percolation::crossing_probability(z2, Mode::site, radii, {0.6, 400, 9, 0, 3});
    v.add("thread_determinism", c1[0].value == c3[0].value && c1[1].value == c3[1].value, 800);

    percolation::ConfigAudit total;
    std::uint64_t configs = 0;
    for (const auto& [L, mode, p] : {std::tuple{z2, Mode::bond, 0.5}, std::tuple{z2, Mode::site, 0.59},
                                     std::tuple{t2, Mode::site, 0.5}}) {
        const auto H = std::make_shared<const BoxGraph>(L, lattice::make_box(L, 10));
        interface::Engine engine(*H);
        for (std::uint64_t s = 0; s < 60; ++s, ++configs) {
            const auto a = percolation::audit_config(percolation::sample_config(H, mode, p, 21, s), engine);
            total.certified += a.certified;
            total.not_interface += a.not_interface;
            total.p_outside_c += a.p_outside_c;
            total.boundary_outside += a.boundary_outside;
            total.not_occurring += a.not_occurring;
            total.overlaps += a.overlaps;
        }
    }
    v.add("unique_interface_invariants", total.violations() == 0, total.certified,
          fmt::format("{} configs; checker {}, P outside C {}, boundary outside {}, not occurring {}, overlaps {}", configs,
                      total.not_interface, total.p_outside_c, total.boundary_outside, total.not_occurring, total.overlaps));

    const auto occ = percolation::occurrence_mc(z2, Mode::bond, 0.5, {0.5, 500, 13, 12, 1});
    v.add("occurrence_per_instance", occ.bound_violations == 0 && occ.overlaps == 0, occ.samples);

    double worst = 0;
    std::uint64_t compared = 0;
    for (Mode mode : {Mode::site, Mode::bond}) {
        const auto T = mode == Mode::site ? enumerate::enumerate_site_animals(z2, {4}) : enumerate::enumerate_bond_animals(z2, {4});
        const auto d = percolation::cluster_size_mc(z2, mode, 4, {0.3, 20000, 17, 0, 1});
        for (int n = 0; n <= 4; ++n, ++compared) {
            worst = std::max(worst, std::abs(d.freq[n].value - percolation::exact_pmf(T, n, 0.3)) / d.freq[n].std_error);
        }
    }
    v.add("exact_mc_consistency", worst <= 5, compared, fmt::format("max |z| = {:.2f}, threshold 5", worst));

    const auto Tb = enumerate::enumerate_interfaces(z2, Mode::bond, {6});
    bool sandwich = true;
    for (int n = 0; n <= 6; ++n) {
        for (int k = 1; k <= 19; ++k) {
            const auto s = percolation::s_o_sandwich(Tb, n, k / 20.0);
            sandwich &= s.lower <= s.upper && s.upper <= n + 1;
        }
    }
    v.add("sandwich_and_expected_N_bound", sandwich, 7 * 19);
}

}  // namespace

int cmd_verify(const Globals& g, const VerifyArgs& a) {
    static const std::vector<std::string> order{"lattice", "enumerate", "interface", "growth", "percolation"};
    if (a.suite != "all" && std::find(order.begin(), order.end(), a.suite) == order.end()) {
        throw UsageError("unknown --suite " + a.suite);
    }
    if (!a.inject_defect.empty() && a.inject_defect != "extractor") throw UsageError("unknown defect " + a.inject_defect);
    const bool sabotage = a.inject_defect == "extractor";

    std::vector<Invariant> all;
    for (const auto& s : order) {
        if (a.suite != "all" && a.suite != s) continue;
        fmt::print("suite {}\n", s);
        Verdict v(s);
        if (s == "lattice") lattice_suite(v);
        if (s == "enumerate") enumerate_suite(v);
        if (s == "interface") interface_suite(v, sabotage);
        if (s == "growth") growth_suite(v);
        if (s == "percolation") percolation_suite(v);
        all.insert(all.end(), v.items.begin(), v.items.end());
    }

    const auto failing = std::find_if(all.begin(), all.end(), [](const Invariant& i) { return !i.pass; });
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = a.suite;
    j["tool_version"] = std::string(kVersion);
    j["pass"] = failing == all.end();
    j["first_failure"] = failing == all.end() ? nlohmann::ordered_json() : nlohmann::ordered_json(failing->suite + "." + failing->name);
    auto& items = j["invariants"] = nlohmann::ordered_json::array();
    for (const auto& i : all) {
        items.push_back({{"suite", i.suite}, {"name", i.name}, {"pass", i.pass}, {"count", i.count}, {"detail", i.detail}});
    }
    std::filesystem::create_directories(g.out_dir);
    std::ofstream(g.out_dir / fmt::format("verify_{}.json", a.suite)) << j.dump(2) << '\n';
    if (failing != all.end()) {
        fmt::print(stderr, "verify failed: {}.{}{}{}\n", failing->suite, failing->name, failing->detail.empty() ? "" : ": ",
                   failing->detail);
        return kExitFailure;
    }
    fmt::print("verify {}: all {} invariants pass\n", a.suite, all.size());
    return kExitOk;
}

}  // namespace percolattice::cli
