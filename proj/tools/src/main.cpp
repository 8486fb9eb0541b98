#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "percolattice/count_table.hpp"
#include "percolattice/enumerate.hpp"
#include "percolattice/version.hpp"

using namespace percolattice;
using namespace percolattice::cli;

int main(int argc, char** argv) {
    CLI::App app{"Lattice animals, interfaces and percolation statistics", "percolattice"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option values (keys are the long option names)");

    Globals g;
    for (int i = 0; i < argc; ++i) g.command_line.emplace_back(argv[i]);
    app.add_option("--lattice", g.lattice, "z<d>, t<d>, sq, sq*, tri or hex")->capture_default_str();
    app.add_option("--mode", g.mode, "bond or site")->capture_default_str();
    app.add_option("--seed", g.seed, "64-bit seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "directory for output files")->capture_default_str();
    app.add_option("--box", g.box, "box radius, or a comma list of radii for crossing")->delimiter(',');

    EnumerateArgs ea;
    auto* en = app.add_subcommand("enumerate", "exact count tables by (n, m)");
    en->fallthrough();
    en->add_option("--class", ea.object_class, "animals, interfaces, multi or inner")->required();
    en->add_option("--max-n", ea.max_n, "largest size")->required();
    en->add_option("--budget", ea.budget, "stop after this many visited objects (0 = none)");
    en->add_option("--max-parts", ea.max_parts, "parts per multi-interface (1..3)")->capture_default_str();
    en->add_option("--method", ea.method, "fixed-point, or plateau for triangulated site interfaces")
        ->capture_default_str();

    GrowthArgs ga;
    auto* gr = app.add_subcommand("growth", "analytics over count tables");
    gr->fallthrough();
    gr->add_option("--counts", ga.counts, "count table CSV (sidecar JSON next to it)");
    gr->add_option("--inner", ga.inner, "inner-interface table CSV for --duality");
    gr->add_option("--r", ga.r, "ratio for the per-n sequence");
    gr->add_option("--eps", ga.eps, "window half-width")->capture_default_str();
    gr->add_option("--check", ga.checks, "occurrence");
    gr->add_flag("--cheeger", ga.cheeger, "I_N sequence and 1/(I_N+1)");
    gr->add_flag("--duality", ga.duality, "inner table against the transposed site table");
    gr->add_flag("--concavity", ga.concavity, "log-concavity diagnostic in r");
    gr->add_option("--partitions", ga.partitions, "exact p(n) and Hardy-Ramanujan up to n");

    PercolateArgs pa;
    auto* pc = app.add_subcommand("percolate", "Monte-Carlo sweeps");
    pc->fallthrough();
    pc->add_option("--p", pa.p, "occupation probabilities in (0,1)")->delimiter(',')->required();
    pc->add_option("--quantity", pa.quantity,
                   "crossing, cluster-size, interface-size, occurrence or large-deviation")
        ->capture_default_str();
    pc->add_option("--samples", pa.samples, "samples per point")->required();
    pc->add_option("--n-max", pa.n_max, "largest size reported")->capture_default_str();
    pc->add_option("--eps", pa.eps, "ratio band half-width for large-deviation")->capture_default_str();

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "invariant suites");
    ve->fallthrough();
    ve->add_option("--suite", va.suite, "lattice, enumerate, interface, growth, percolation or all")
        ->capture_default_str();
    ve->add_option("--inject-defect", va.inject_defect)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*en) return cmd_enumerate(g, ea);
        if (*gr) return cmd_growth(g, ga);
        if (*pc) return cmd_percolate(g, pa);
        if (*ve) return cmd_verify(g, va);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const enumerate::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const IncompleteRow& e) {
        std::cerr << "incomplete table: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
