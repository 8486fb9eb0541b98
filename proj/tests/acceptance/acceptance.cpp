// Acceptance run: one PASS/FAIL line per criterion. `--criterion N` runs a single one; the exit code
// is nonzero when any criterion that ran failed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "oracle.hpp"
#include "percolattice/enumerate.hpp"
#include "percolattice/growth.hpp"
#include "percolattice/interface.hpp"
#include "percolattice/percolation.hpp"

namespace {

using namespace percolattice;
using lattice::BoxGraph;
using lattice::parse_lattice;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

enumerate::Options upto(int n) {
    enumerate::Options o;
    o.n_max = n;
    return o;
}

// Interface tables are reused by several criteria within one process.
const CountTable& interfaces(const char* lat, Mode mode, int n) {
    static std::map<std::tuple<std::string, Mode, int>, CountTable> cache;
    const auto key = std::make_tuple(std::string(lat), mode, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, enumerate::enumerate_interfaces(parse_lattice(lat), mode, upto(n))).first;
    return it->second;
}

CountTable animals(const char* lat, Mode mode, int n) {
    const auto L = parse_lattice(lat);
    return mode == Mode::site ? enumerate::enumerate_site_animals(L, upto(n))
                              : enumerate::enumerate_bond_animals(L, upto(n));
}

std::string first_detail(const CheckReport& r) {
    return r.details.empty() ? std::string() : r.details.front().dump();
}

Outcome oracle_equivalence() {
    Stopwatch clock;
    struct Case {
        const char* lattice;
        Mode mode;
        bool interface;
        int n;
    };
    const Case cases[] = {{"z2", Mode::site, false, 8}, {"z2", Mode::bond, false, 6}, {"z2", Mode::bond, true, 6},
                          {"z2", Mode::site, true, 6},  {"tri", Mode::site, false, 6}, {"tri", Mode::site, true, 6}};
    std::vector<std::string> bad;
    std::size_t entries = 0;
    for (const Case& c : cases) {
        const auto L = parse_lattice(c.lattice);
        const auto mine = c.interface ? interfaces(c.lattice, c.mode, c.n) : animals(c.lattice, c.mode, c.n);
        const auto ref = c.interface ? oracle::interfaces(L, c.mode, c.n) : oracle::animals(L, c.mode, c.n);
        entries += ref.entries.size();
        if (mine.entries != ref.entries)
            bad.push_back(fmt::format("{} {} {}", c.lattice, to_string(c.mode), c.interface ? "interfaces" : "animals"));
    }
    const double t = clock.seconds();
    return {bad.empty() && t <= 300,
            fmt::format("{} tables, {} (n,m) entries compared, mismatches: [{}], {:.1f}s", std::size(cases), entries,
                        fmt::join(bad, ", "), t)};
}

Outcome definition_closure() {
    Stopwatch clock;
    struct Case {
        const char* lattice;
        Mode mode;
        double p;
        int clusters;
    };
    const Case cases[] = {{"z2", Mode::bond, 0.45, 2000}, {"z2", Mode::site, 0.55, 1000}, {"z3", Mode::bond, 0.22, 1500},
                          {"z3", Mode::site, 0.28, 1000}, {"t2", Mode::site, 0.45, 2000}, {"t2", Mode::bond, 0.3, 500},
                          {"sq", Mode::bond, 0.45, 1000}, {"sq", Mode::site, 0.55, 1000}};
    std::uint64_t total = 0, rejected = 0, planar = 0, planar_bad = 0, induced = 0, induced_bad = 0;
    for (const Case& c : cases) {
        const auto L = parse_lattice(c.lattice);
        const auto G = std::make_shared<const BoxGraph>(L, lattice::make_box(L, L.dimension == 2 ? 14 : 8));
        interface::Engine engine(*G);
        int got = 0;
        for (std::uint64_t s = 0; got < c.clusters; ++s) {
            const auto oc = percolation::origin_cluster(percolation::sample_config(G, c.mode, c.p, 2024, s));
            if (oc.empty || oc.reaches_margin) continue;
            ++got, ++total;
            const auto I = engine.extract(oc.cluster, false);
            rejected += !engine.check(c.mode, I.P, I.boundary, I.anchor).ok();
            if (c.mode == Mode::bond && std::strcmp(c.lattice, "z2") == 0) {
                const auto J = engine.extract_planar(oc.cluster);
                ++planar;
                planar_bad += J.P != I.P || J.boundary != I.boundary;
            }
            if (c.mode == Mode::site && std::strcmp(c.lattice, "t2") == 0) {
                const auto J = engine.site_of_induced(oc.cluster.vertices);
                ++induced;
                induced_bad += J.P_sites != I.P_sites || J.boundary_sites != I.boundary_sites;
            }
        }
    }
    const double t = clock.seconds();
    return {rejected == 0 && planar_bad == 0 && induced_bad == 0 && t <= 600,
            fmt::format("{} clusters on z2/z3/t2/sq, checker rejected {}; planar vs general on {} z2 bond clusters: {} "
                        "differ; outer shell vs general on {} t2 site clusters: {} differ; {:.1f}s",
                        total, rejected, planar, planar_bad, induced, induced_bad, t)};
}

Outcome uniqueness_invariants() {
    struct Case {
        const char* lattice;
        Mode mode;
        double p;
        int radius;
        int configs;
    };
    const Case cases[] = {{"z2", Mode::bond, 0.5, 24, 300},
                          {"z2", Mode::site, 0.59, 24, 250},
                          {"t2", Mode::site, 0.5, 24, 250},
                          {"z3", Mode::bond, 0.25, 10, 200}};
    percolation::ConfigAudit sum;
    std::uint64_t configs = 0;
    for (const Case& c : cases) {
        const auto L = parse_lattice(c.lattice);
        const auto G = std::make_shared<const BoxGraph>(L, lattice::make_box(L, c.radius));
        interface::Engine engine(*G);
        for (int s = 0; s < c.configs; ++s, ++configs) {
            const auto a = percolation::audit_config(
                percolation::sample_config(G, c.mode, c.p, 77, static_cast<std::uint64_t>(s)), engine);
            sum.clusters += a.clusters;
            sum.certified += a.certified;
            sum.not_interface += a.not_interface;
            sum.p_outside_c += a.p_outside_c;
            sum.boundary_outside += a.boundary_outside;
            sum.not_occurring += a.not_occurring;
            sum.overlaps += a.overlaps;
        }
    }
    return {sum.violations() == 0 && configs >= 1000,
            fmt::format("{} configurations, {} clusters certified of {}; P outside C {}, boundary outside dC {}, not "
                        "occurring {}, overlapping pairs {}, checker {}",
                        configs, sum.certified, sum.clusters, sum.p_outside_c, sum.boundary_outside, sum.not_occurring,
                        sum.overlaps, sum.not_interface)};
}

Outcome occurrence_bound() {
    const auto grid = growth::standard_p_grid();
    const auto& z2 = interfaces("z2", Mode::bond, 10);
    const auto& t2 = interfaces("t2", Mode::site, 6);
    const auto a = growth::occurrence_bound_check(z2, grid);
    const auto b = growth::occurrence_bound_check(t2, grid);
    // Largest ratio of the exact sum to n+1, for the record.
    double worst = 0;
    for (const CountTable* T : {&z2, &t2})
        for (int n = 0; n <= T->n_max; ++n)
            for (const auto& p : grid)
                worst = std::max(worst, static_cast<double>(growth::Rational(growth::occurrence_sum(*T, n, p) / (n + 1))));
    return {a.pass && b.pass,
            fmt::format("z2 bond n<=10 and t2 site n<=6 at p = 0.05..0.95, exact rationals; max sum/(n+1) = {:.6f}{}",
                        worst, a.pass && b.pass ? "" : "; " + first_detail(a.pass ? b : a))};
}

Outcome cheeger() {
    const auto& T = interfaces("z2", Mode::bond, 10);
    const auto rep = growth::cheeger_report(T, growth::Rational(1, 2));
    const auto rows = growth::cheeger_interface_estimate(T);
    bool under = true;
    std::vector<std::string> I;
    for (const auto& r : rows) {
        under &= r.p_bound <= 2.0 / 3.0;
        I.push_back(fmt::format("{}/{}", r.m, r.n));
    }
    return {rep.pass && under && rows.size() == 10,
            fmt::format("I_1..I_10 = {}; 1/(I_N+1) max {:.4f}", fmt::join(I, " "),
                        std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.p_bound < b.p_bound; })
                            ->p_bound)};
}

Outcome f_identities() {
    double dual = 0, link = 0;
    std::size_t pts = 0;
    for (double r : growth::standard_r_grid()) {
        dual = std::max(dual, std::abs(growth::f_of_r(r) - std::pow(growth::f_of_r(1 / r), r)));
        ++pts;
    }
    for (const auto& pr : growth::standard_p_grid()) {
        const double p = static_cast<double>(pr);
        const double r = growth::r_of_p(p);
        link = std::max(link, std::abs(growth::f_of_r(r) * p * std::pow(1 - p, r) - 1));
        ++pts;
    }
    return {dual <= 1e-9 && link <= 1e-12,
            fmt::format("{} grid points; max |f(r) - f(1/r)^r| = {:.2e}, max |f(r(p)) p (1-p)^r(p) - 1| = {:.2e}", pts,
                        dual, link)};
}

Outcome duality() {
    const auto tri = parse_lattice("tri");
    const auto& site = interfaces("tri", Mode::site, 8);
    const auto inner = enumerate::enumerate_inner_interfaces(tri, upto(8));
    const auto rep = growth::duality_table_check(site, inner);

    // The dual cut is translation invariant, so one representative per class suffices.
    std::uint64_t classes = 0, not_cycle = 0;
    enumerate::visit_interface_classes(parse_lattice("z2"), Mode::bond, upto(10),
                                       [&](unsigned, interface::Engine& engine, const interface::DenseInterface& I,
                                           std::uint64_t) {
                                           ++classes;
                                           not_cycle += !engine.dual_cut_cycle(I.boundary, I.anchor).has_value();
                                       });
    return {rep.pass && not_cycle == 0,
            fmt::format("tri inner table vs transposed site table n<=8: {} ({} entries); z2 bond n<=10: {} of {} classes "
                        "without a simple dual cycle",
                        rep.pass ? "equal" : "differ", inner.entries.size(), not_cycle, classes)};
}

Outcome exact_vs_mc() {
    Stopwatch clock;
    const auto z2 = parse_lattice("z2");
    double worst = 0;
    std::string where;
    int compared = 0;
    std::uint64_t samples = std::numeric_limits<std::uint64_t>::max();
    for (Mode mode : {Mode::site, Mode::bond}) {
        const auto T = animals("z2", mode, 6);
        for (double p : {0.3, 0.5}) {
            percolation::McParams mc;
            mc.p = p;
            mc.samples = 100000;
            mc.seed = 8;  // fixed before the first run; see the README before changing anything here
            const auto d = percolation::cluster_size_mc(z2, mode, 6, mc);
            samples = std::min(samples, d.samples - d.discarded);
            for (int n = 0; n <= 6; ++n, ++compared) {
                const double exact = percolation::exact_pmf(T, n, p);
                const auto& f = d.freq[static_cast<std::size_t>(n)];
                const double z = f.std_error > 0 ? (f.value - exact) / f.std_error : (f.value == exact ? 0 : 1e9);
                if (std::abs(z) > worst) {
                    worst = std::abs(z);
                    where = fmt::format("{} p={} n={}: exact {:.6f}, MC {:.6f}, z = {:+.2f}", to_string(mode), p, n,
                                        exact, f.value, z);
                }
            }
        }
    }
    const double t = clock.seconds();
    return {worst <= 3 && samples >= 100000 && t <= 600,
            fmt::format("{} (mode, p, n) points, {} usable samples each, max |z| = {:.2f} (limit 3) at {}; {:.1f}s",
                        compared, samples, worst, where, t)};
}

Outcome large_deviation() {
    const auto& T = interfaces("z2", Mode::bond, 10);
    const std::vector<int> ns{6, 7, 8, 9, 10};
    const auto rows = percolation::large_deviation_exact(T, 0.6, 0.5, ns);
    bool nonincreasing = true;
    std::vector<std::string> vals;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        vals.push_back(fmt::format("{:.6g}", rows[i].fraction));
        if (i > 0) nonincreasing &= rows[i].fraction <= rows[i - 1].fraction;
    }
    return {nonincreasing && rows.size() == ns.size(),
            fmt::format("fraction outside the band for n = 6..10: {} (nonincreasing; no interface this small has "
                        "|dP|/|P| <= 7/6)",
                        fmt::join(vals, " "))};
}

Outcome crossing() {
    Stopwatch clock;
    const auto tri = parse_lattice("tri");
    const std::vector<int> radii{32, 128};
    percolation::McParams mc;
    mc.samples = 20000;
    mc.seed = 10;
    mc.p = 0.55;
    const auto hi = percolation::crossing_probability(tri, Mode::site, radii, mc);
    mc.p = 0.45;
    const auto lo = percolation::crossing_probability(tri, Mode::site, radii, mc);
    const bool up = hi[1].value > hi[0].value - 2 * hi[0].std_error;
    const bool down = lo[1].value < lo[0].value + 2 * lo[0].std_error;
    const double t = clock.seconds();
    return {up && down && t <= 900,
            fmt::format("p=0.55: L=32 {:.4f}({:.4f}), L=128 {:.4f}({:.4f}); p=0.45: L=32 {:.4f}({:.4f}), L=128 "
                        "{:.4f}({:.4f}); {:.1f}s",
                        hi[0].value, hi[0].std_error, hi[1].value, hi[1].std_error, lo[0].value, lo[0].std_error,
                        lo[1].value, lo[1].std_error, t)};
}

Outcome strict_inequality() {
    std::vector<std::string> parts;
    bool all = true;
    for (Mode mode : {Mode::bond, Mode::site}) {
        const auto A = animals("z2", mode, 10);
        const auto& C = interfaces("z2", mode, 10);
        std::vector<std::string> cells;
        for (int n = 3; n <= 10; ++n) {
            const auto a = A.row_total(n), c = C.row_total(n);
            all &= c < a;
            cells.push_back(fmt::format("{}:{}/{}", n, c, a));
        }
        parts.push_back(fmt::format("{} c_n/a_n {}", to_string(mode), fmt::join(cells, " ")));
    }
    return {all, fmt::format("{}; a_n anchored animals, c_n interfaces of o", fmt::join(parts, "; "))};
}

std::uint64_t brute_partitions(int n, int largest) {
    if (n == 0) return 1;
    std::uint64_t s = 0;
    for (int k = std::min(n, largest); k >= 1; --k) s += brute_partitions(n - k, k);
    return s;
}

Outcome partitions() {
    bool exact = true;
    for (int n = 0; n <= 30; ++n) exact &= growth::partition_count(n) == brute_partitions(n, n);
    const auto rel = [](int n) {
        return std::abs(static_cast<double>(growth::partition_count(n)) / growth::hardy_ramanujan(n) - 1);
    };
    const double e50 = rel(50), e200 = rel(200);
    return {exact && e200 < e50,
            fmt::format("p(n) = brute force for n <= 30: {}; |p/HR - 1| at 50 = {:.5f}, at 200 = {:.5f}",
                        exact ? "yes" : "no", e50, e200)};
}

Outcome decay_continuity() {
    std::vector<double> grid;
    for (int k = 10; k <= 90; ++k) grid.push_back(k / 100.0);
    std::vector<std::string> failed;
    int checks = 0;
    for (Mode mode : {Mode::bond, Mode::site}) {
        const auto A = animals("z2", mode, 8);
        const auto& C = interfaces("z2", mode, 8);
        for (const CountTable* T : {&A, &C}) {
            ++checks;
            const auto r = percolation::decay_lipschitz_check(*T, grid, 8);
            if (!r.pass) failed.push_back(fmt::format("{} {}: {}", to_string(mode), to_string(T->object_class), first_detail(r)));
        }
    }
    return {failed.empty(), fmt::format("z2 animal and interface tables, both modes, n <= 8, 80 adjacent pairs each; "
                                        "{} of {} tables violate the bound{}",
                                        failed.size(), checks, failed.empty() ? "" : ": " + fmt::format("{}", fmt::join(failed, "; ")))};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence", oracle_equivalence},
    {2, "definition closure", definition_closure},
    {3, "uniqueness invariants", uniqueness_invariants},
    {4, "exact occurrence bound", occurrence_bound},
    {5, "Cheeger constant", cheeger},
    {6, "f identities", f_identities},
    {7, "duality", duality},
    {8, "exact vs Monte Carlo", exact_vs_mc},
    {9, "large deviation", large_deviation},
    {10, "triangular crossing", crossing},
    {11, "strict inequality c_n < a_n", strict_inequality},
    {12, "partitions", partitions},
    {13, "decay-rate continuity", decay_continuity},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            fmt::print(stderr, "usage: {} [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        fmt::print("criterion {:2} {} {}: {}\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail);
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}
