#include "commands.hpp"

#include <fstream>
#include <iostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "manifest.hpp"
#include "percolattice/enumerate.hpp"
#include "percolattice/growth.hpp"
#include "percolattice/percolation.hpp"
#include "percolattice/version.hpp"

namespace percolattice::cli {

namespace fs = std::filesystem;

lattice::LatticeModel Globals::model() const {
    try {
        return lattice::parse_lattice(lattice);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Mode Globals::parsed_mode() const {
    try {
        return parse_mode(mode);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::string file_token(const std::string& lattice) {
    std::string s;
    for (char c : lattice) s += c == '*' ? std::string("star") : std::string(1, c);
    return s;
}

namespace {

fs::path prepare_out_dir(const Globals& g) {
    fs::create_directories(g.out_dir);
    return g.out_dir;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) { std::ofstream(path) << j.dump(2) << '\n'; }

std::string plural(ObjectClass c) {
    switch (c) {
        case ObjectClass::animal: return "animals";
        case ObjectClass::interface: return "interfaces";
        case ObjectClass::multi_interface: return "multi";
        case ObjectClass::inner_interface: return "inner";
    }
    return "?";
}

// Table plus its sidecar, which lives next to the CSV with a .json extension.
CountTable load_table(const fs::path& csv) {
    std::ifstream in(csv);
    if (!in) throw UsageError("cannot read " + csv.string());
    CountTable t = read_csv(in);
    auto side = csv;
    side.replace_extension(".json");
    if (std::ifstream sin(side); sin) {
        apply_sidecar(t, nlohmann::json::parse(sin));
    } else {
        std::cerr << "no sidecar next to " << csv.string() << "; rows are treated as uncertified\n";
    }
    return t;
}

std::string num(double x) { return fmt::format("{}", x); }

}  // namespace

int cmd_enumerate(const Globals& g, const EnumerateArgs& a) {
    const auto L = g.model();
    const Mode mode = g.parsed_mode();
    if (a.max_n < 0) throw UsageError("--max-n must be given and >= 0");
    ObjectClass cls;
    try {
        cls = parse_object_class(a.object_class);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const enumerate::Options opt{a.max_n, g.threads, a.budget};
    CountTable t;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    switch (cls) {
        case ObjectClass::animal:
            t = mode == Mode::site ? enumerate::enumerate_site_animals(L, opt) : enumerate::enumerate_bond_animals(L, opt);
            break;
        case ObjectClass::interface:
            if (a.method == "plateau") {
                if (mode != Mode::site || !L.triangulated) throw UsageError("--method plateau needs site mode on a triangulated lattice");
                enumerate::PlateauReport rep;
                t = enumerate::enumerate_site_interfaces_triangulated(L, opt, &rep);
                extra["plateau"] = {{"max_d_size", rep.max_d_size}, {"grown_to", rep.grown_to}, {"certified", rep.certified}};
            } else if (a.method == "fixed-point") {
                t = enumerate::enumerate_interfaces(L, mode, opt);
            } else {
                throw UsageError("unknown --method " + a.method);
            }
            break;
        case ObjectClass::multi_interface: {
            enumerate::MultiReport rep;
            t = enumerate::enumerate_multi_interfaces(L, mode, opt, a.max_parts, &rep);
            extra["multi"] = {{"collections", rep.collections}, {"nested", rep.nested}, {"not_nested", rep.not_nested}};
            break;
        }
        case ObjectClass::inner_interface:
            if (mode != Mode::site) throw UsageError("inner interfaces are site objects; use --mode site");
            t = enumerate::enumerate_inner_interfaces(L, opt);
            break;
    }

    const fs::path dir = prepare_out_dir(g);
    const std::string stem = fmt::format("{}_{}_{}", file_token(t.lattice), to_string(t.mode), plural(cls));
    const fs::path csv = dir / (stem + ".csv"), side = dir / (stem + ".json");
    {
        std::ofstream out(csv);
        write_csv(out, t);
    }
    auto sc = sidecar(t, kVersion);
    for (const auto& [k, v] : extra.items()) sc[k] = v;
    write_json(side, sc);

    RunManifest m(g.command_line, t.lattice, std::string(to_string(t.mode)), g.seed);
    m.parameters() = {{"class", plural(cls)}, {"max_n", a.max_n}, {"threads", g.threads}, {"budget", a.budget},
                      {"method", a.method}};
    m.add_output(csv);
    m.add_output(side);
    m.write(dir / (stem + ".manifest.json"));

    fmt::print("{} {} {} (n <= {}, {})\n", plural(cls), to_string(t.mode), t.lattice, t.n_max, t.certification);
    for (int n = 0; n <= t.n_max; ++n) fmt::print("  n={:<3} total={}\n", n, t.row_total(n));
    fmt::print("wrote {}\n", csv.string());
    return kExitOk;
}

int cmd_growth(const Globals& g, const GrowthArgs& a) {
    const fs::path dir = prepare_out_dir(g);
    const bool table_work = a.r || !a.checks.empty() || a.cheeger || a.duality || a.concavity;
    if (!table_work && !a.partitions) throw UsageError("growth: nothing to do (give --r, --check, --cheeger, --duality, --concavity or --partitions)");
    if (table_work && !a.counts) throw UsageError("growth: --counts is required");

    bool pass = true;
    std::optional<CountTable> T;
    std::string stem = "growth";
    if (a.counts) {
        T = load_table(*a.counts);
        stem = a.counts->stem().string();
    }
    RunManifest m(g.command_line, T ? T->lattice : g.lattice, T ? std::string(to_string(T->mode)) : g.mode, g.seed);
    m.parameters() = {{"counts", a.counts ? a.counts->filename().string() : ""}, {"eps", a.eps}};
    auto report = [&](const std::string& name, const CheckReport& rep) {
        const fs::path p = dir / (stem + "_" + name + ".json");
        write_json(p, to_json(rep));
        m.add_output(p);
        fmt::print("{}: {}\n", rep.check, rep.pass ? "pass" : "FAIL");
        pass &= rep.pass;
    };

    if (a.r) {
        const growth::GrowthEstimate est = growth::br_estimate(*T, growth::RatioWindow(*a.r, a.eps));
        const fs::path p = dir / fmt::format("{}_r{}_eps{}.csv", stem, num(*a.r), num(a.eps));
        std::ofstream out(p);
        growth::write_sequence_csv(out, std::span(&est, 1));
        out.close();
        m.add_output(p);
        fmt::print("sequence c_(n,r,eps)^(1/n), f(r+eps) = {:.6f}, decreasing steps = {}\n", est.f_bound,
                   est.decreasing_steps());
        for (const auto& [n, v] : est.values) fmt::print("  n={:<3} {:.6f}\n", n, v);
    }
    for (const auto& c : a.checks) {
        if (c != "occurrence") throw UsageError("unknown --check " + c);
        const auto grid = growth::standard_p_grid();
        report("occurrence", growth::occurrence_bound_check(*T, grid));
        std::vector<growth::RatioWindow> windows;
        for (double r : growth::standard_r_grid()) {
            for (double e : growth::standard_eps_grid()) windows.emplace_back(r, e);
        }
        report("occurrence_tie_out", growth::occurrence_tie_out(*T, windows));
    }
    if (a.cheeger) {
        const auto L = lattice::parse_lattice(T->lattice);
        // The bond Cheeger constant of the square lattice is 1/2.
        std::optional<growth::Rational> floor;
        if (T->mode == Mode::bond && L.dimension == 2 &&
            (L.family == lattice::Family::CubicZd || L.family == lattice::Family::PlanarSquare)) {
            floor = growth::Rational(1, 2);
        }
        const auto rep = growth::cheeger_report(*T, floor);
        report("cheeger", rep);
        const fs::path p = dir / (stem + "_cheeger.csv");
        std::ofstream out(p);
        out << "N,I_N,p_bound\n";
        fmt::print("  {:>3} {:>10} {:>10}\n", "N", "I_N", "1/(I_N+1)");
        for (const auto& r : growth::cheeger_interface_estimate(*T)) {
            out << fmt::format("{},{:.17g},{:.17g}\n", r.N, r.I, r.p_bound);
            fmt::print("  {:>3} {:>10.6f} {:>10.6f}\n", r.N, r.I, r.p_bound);
        }
        out.close();
        m.add_output(p);
    }
    if (a.duality) {
        if (!a.inner) throw UsageError("--duality needs --inner <inner table csv>");
        report("duality", growth::duality_table_check(*T, load_table(*a.inner)));
    }
    if (a.concavity) {
        std::vector<int> ns;
        for (int n = 1; n <= T->n_max; ++n) ns.push_back(n);
        const auto grid = growth::standard_r_grid();
        const auto rep = growth::concavity_diagnostic(*T, a.eps, grid, ns);
        report("concavity", rep);
        for (const auto& d : rep.details) {
            fmt::print("  n={:<3} violations={} max_log_violation={:.3g}\n", d["n"].get<int>(), d["violations"].get<int>(),
                       d["max_log_violation"].get<double>());
        }
    }
    if (a.partitions) {
        if (*a.partitions < 1) throw UsageError("--partitions needs n >= 1");
        const fs::path p = dir / "partitions.csv";
        std::ofstream out(p);
        out << "n,p_n,hardy_ramanujan,ratio_minus_one\n";
        for (int n = 1; n <= *a.partitions; ++n) {
            const auto exact = growth::partition_count(n);
            const double hr = growth::hardy_ramanujan(n);
            out << fmt::format("{},{},{:.17g},{:.17g}\n", n, exact.str(), hr, exact.convert_to<double>() / hr - 1);
        }
        out.close();
        m.add_output(p);
        fmt::print("p({}) = {}\n", *a.partitions, growth::partition_count(*a.partitions).str());
    }
    m.write(dir / (stem + "_growth.manifest.json"));
    return pass ? kExitOk : kExitFailure;
}

int cmd_percolate(const Globals& g, const PercolateArgs& a) {
    const auto L = g.model();
    const Mode mode = g.parsed_mode();
    if (a.p.empty()) throw UsageError("--p is required");
    for (double p : a.p) {
        if (!(p > 0 && p < 1)) throw UsageError(fmt::format("--p {} outside the open interval (0,1)", p));
    }
    if (a.samples == 0) throw UsageError("--samples must be positive");
    if (a.n_max < 0) throw UsageError("--n-max must be >= 0");
    const std::string name = lattice::lattice_name(L);
    const fs::path dir = prepare_out_dir(g);
    const std::string stem = fmt::format("percolate_{}_{}_{}", a.quantity, file_token(name), to_string(mode));
    const fs::path csv = dir / (stem + ".csv");
    std::ofstream out(csv);
    out << percolation::kPercolateCsvHeader << '\n';
    auto row = [&](std::string_view q, double p, const std::string& n_or_L, double value, double se, std::uint64_t samples) {
        out << fmt::format("{},{},{},{},{},{:.17g},{:.17g},{},{}\n", q, name, to_string(mode), p, n_or_L, value, se,
                           samples, g.seed);
    };
    const int radius = g.box.empty() ? 0 : g.box.front();
    bool invariants_ok = true;
    nlohmann::ordered_json flags = nlohmann::ordered_json::array();

    for (double p : a.p) {
        const percolation::McParams mc{p, a.samples, g.seed, radius, g.threads};
        if (a.quantity == "crossing") {
            const std::vector<int> radii = g.box.empty() ? std::vector<int>{32} : g.box;
            const auto est = percolation::crossing_probability(L, mode, radii, mc);
            for (std::size_t i = 0; i < radii.size(); ++i) {
                row("crossing", p, std::to_string(radii[i]), est[i].value, est[i].std_error, est[i].samples);
                fmt::print("p={} L={} crossing={:.5f} +- {:.5f}\n", p, radii[i], est[i].value, est[i].std_error);
            }
        } else if (a.quantity == "cluster-size") {
            const auto d = percolation::cluster_size_mc(L, mode, a.n_max, mc);
            const CountTable T = mode == Mode::site ? enumerate::enumerate_site_animals(L, {a.n_max})
                                                    : enumerate::enumerate_bond_animals(L, {a.n_max});
            for (int n = 0; n <= a.n_max; ++n) {
                row("cluster_pmf", p, std::to_string(n), d.freq[n].value, d.freq[n].std_error, d.freq[n].samples);
                row("cluster_pmf_exact", p, std::to_string(n), percolation::exact_pmf(T, n, p), 0, 0);
            }
            row("discarded", p, "", static_cast<double>(d.discarded), 0, d.samples);
        } else if (a.quantity == "interface-size") {
            const auto d = percolation::interface_size_mc(L, mode, a.n_max, mc);
            const bool sandwich = L.family != lattice::Family::PlanarHexagonal && !L.dual_shift;
            const CountTable T = enumerate::enumerate_interfaces(L, mode, {a.n_max});
            for (int n = 0; n <= a.n_max; ++n) {
                row("interface_pmf", p, std::to_string(n), d.freq[n].value, d.freq[n].std_error, d.freq[n].samples);
                row("expected_N_exact", p, std::to_string(n), percolation::expected_Nn(T, n, p), 0, 0);
                if (sandwich) {
                    row("sandwich_lower", p, std::to_string(n), percolation::s_o_sandwich(T, n, p).lower, 0, 0);
                }
            }
            row("discarded", p, "", static_cast<double>(d.discarded), 0, d.samples);
        } else if (a.quantity == "occurrence" || a.quantity == "large-deviation") {
            const auto occ = percolation::occurrence_mc(L, mode, a.eps, mc);
            if (a.quantity == "occurrence") {
                const double N = static_cast<double>(occ.samples);
                for (int n = 0; n <= a.n_max; ++n) {
                    const auto it = occ.by_size.find(n);
                    const auto t = it == occ.by_size.end() ? percolation::OccurrenceMc::Ratio{} : it->second;
                    const double mean = t.sy / N;
                    const double var = N > 1 ? std::max(0.0, (t.syy - N * mean * mean) / (N - 1)) : 0.0;
                    row("expected_N", p, std::to_string(n), mean, std::sqrt(var / N), occ.samples);
                }
            } else {
                std::vector<int> ns;
                for (int n = 1; n <= a.n_max; ++n) ns.push_back(n);
                const auto rows = percolation::large_deviation_stats(occ, ns);
                for (const auto& r : rows) {
                    row("deviation_fraction", p, std::to_string(r.n), r.fraction, r.std_error, occ.samples);
                    if (r.low_support) flags.push_back({{"p", p}, {"n", r.n}, {"support", r.support}, {"flag", "low support"}});
                }
            }
            row("bound_violations", p, "", static_cast<double>(occ.bound_violations), 0, occ.samples);
            row("overlaps", p, "", static_cast<double>(occ.overlaps), 0, occ.samples);
            row("discarded_clusters", p, "", static_cast<double>(occ.discarded_clusters), 0, occ.samples);
            if (occ.bound_violations || occ.overlaps) {
                invariants_ok = false;
                fmt::print(stderr, "p={}: {} instances violate N_n <= n+1, {} overlapping pairs\n", p,
                           occ.bound_violations, occ.overlaps);
            }
        } else {
            throw UsageError("unknown --quantity " + a.quantity);
        }
    }
    out.close();

    RunManifest m(g.command_line, name, std::string(to_string(mode)), g.seed);
    m.parameters() = {{"quantity", a.quantity}, {"p", a.p}, {"samples", a.samples}, {"box", g.box},
                      {"n_max", a.n_max}, {"eps", a.eps}, {"threads", g.threads}};
    m.add_output(csv);
    if (!flags.empty()) {
        const fs::path fp = dir / (stem + "_flags.json");
        write_json(fp, {{"schema_version", 1}, {"flags", flags}});
        m.add_output(fp);
    }
    m.write(dir / (stem + ".manifest.json"));
    fmt::print("wrote {}\n", csv.string());
    return invariants_ok ? kExitOk : kExitFailure;
}

}  // namespace percolattice::cli
