#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "percolattice/count_table.hpp"
#include "percolattice/interface.hpp"
#include "percolattice/perc_config.hpp"
#include "percolattice/report.hpp"
#include "percolattice/rng.hpp"

namespace percolattice::percolation {

using lattice::BoxGraph;
using lattice::EdgeId;
using lattice::LatticeModel;
using lattice::VertexId;

struct McEstimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
};

// Frequency estimate for k hits out of n trials; stderr is the sample standard deviation over sqrt(n).
McEstimate frequency(std::uint64_t hits, std::uint64_t n);

// Occupancy of one sample, evaluated on demand. Bit i is counter_hash(seed, sample, i) < p.
class LazyOccupancy {
public:
    LazyOccupancy(double p, std::uint64_t seed, std::uint64_t sample) : bern_(p), seed_(seed), sample_(sample) {}
    bool operator()(std::uint32_t index) const { return bern_(rng::counter_hash(seed_, sample_, index)); }

private:
    rng::Bernoulli bern_;
    std::uint64_t seed_, sample_;
};

PercConfig sample_config(std::shared_ptr<const BoxGraph> G, Mode mode, double p, std::uint64_t seed,
                         std::uint64_t sample = 0);
PercConfig sample_config(const LatticeModel& L, const lattice::Box& box, Mode mode, double p, std::uint64_t seed,
                         std::uint64_t sample = 0);

struct OriginCluster {
    bool reaches_margin = false;  // some cluster vertex has depth <= margin; the cluster is then partial
    bool empty = false;           // site mode with o vacant
    bool capped = false;          // growth stopped past the size cap
    interface::DenseCluster cluster;
    std::size_t size() const { return cluster.mode == Mode::bond ? cluster.edges.size() : cluster.vertices.size(); }
};

OriginCluster origin_cluster(const PercConfig& omega);

// Σ_m T(n,m) p^n (1-p)^m from an animal table: Pr_p(|C_o| = n). Site mode with n = 0 gives 1 - p.
double exact_pmf(const CountTable& T, int n, double p);
// The same polynomial on an interface table: E_p(N_n).
double expected_Nn(const CountTable& T, int n, double p);

struct Sandwich {
    double lower = 0;  // p^M E_p(N_n) / (ln + 1)
    double upper = 0;  // E_p(N_n)
};
// Only where the first axis is a geodesic (l = 1, M = 1); throws std::invalid_argument elsewhere.
Sandwich s_o_sandwich(const CountTable& T, int n, double p);

struct OccurringInterfaces {
    std::map<int, std::uint64_t> by_size;        // N_n
    std::vector<std::pair<int, int>> sizes;      // (|P|, |∂P|) of each occurring interface of o
    std::uint64_t discarded = 0;                 // ray clusters that touched the margin
    std::uint64_t overlaps = 0;                  // pairs of distinct interfaces sharing a vertex
    std::uint64_t N(int n) const {
        const auto it = by_size.find(n);
        return it == by_size.end() ? 0 : it->second;
    }
};

// Interfaces of o that occur in omega. Each meets the ray o + k e_1, so the clusters of the ray
// vertices inside the certified zone are extracted and kept when their boundary encloses o.
OccurringInterfaces count_occurring_interfaces(const PercConfig& omega, interface::Engine& engine);

struct ConfigAudit {
    std::uint64_t clusters = 0;
    std::uint64_t certified = 0;
    std::uint64_t discarded = 0;
    std::uint64_t not_interface = 0;   // checker rejected the extracted pair
    std::uint64_t p_outside_c = 0;     // P not inside the cluster
    std::uint64_t boundary_outside = 0;  // ∂P not inside ∂C
    std::uint64_t not_occurring = 0;
    std::uint64_t overlaps = 0;        // distinct interfaces sharing a vertex
    std::uint64_t violations() const {
        return not_interface + p_outside_c + boundary_outside + not_occurring + overlaps;
    }
};

// Extracts the interface of every cluster away from the margin and checks the uniqueness invariants.
ConfigAudit audit_config(const PercConfig& omega, interface::Engine& engine);

struct SizeDistribution {
    std::vector<McEstimate> freq;  // index n, conditional on not touching the margin
    std::uint64_t larger = 0;      // beyond the cap (or no S_o)
    std::uint64_t discarded = 0;
    std::uint64_t samples = 0;
};

struct McParams {
    double p = 0.5;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int box_radius = 0;  // 0 picks a default from the size cap
    unsigned threads = 1;
};

// Frequencies of |C_o| = n for n <= n_cap.
SizeDistribution cluster_size_mc(const LatticeModel& L, Mode mode, int n_cap, const McParams& mc);
// Frequencies of |S_o| = n, S_o being the interface of C_o.
SizeDistribution interface_size_mc(const LatticeModel& L, Mode mode, int n_cap, const McParams& mc);

struct OccurrenceMc {
    std::uint64_t samples = 0;
    std::uint64_t bound_violations = 0;  // instances with N_n > n+1 for some n
    std::uint64_t overlaps = 0;
    std::uint64_t discarded_clusters = 0;
    // Per n: x = interfaces with ratio outside [r(p)-eps, r(p)+eps], y = all, summed over samples.
    struct Ratio {
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    };
    std::map<int, Ratio> by_size;
};

OccurrenceMc occurrence_mc(const LatticeModel& L, Mode mode, double eps, const McParams& mc);

struct DeviationRow {
    int n = 0;
    double fraction = 0;  // NaN without support
    double std_error = 0;
    std::uint64_t support = 0;  // occurring interfaces of size n seen
    bool low_support = false;
};

// Fraction of occurring interfaces of size n with ratio outside [r(p)-eps, r(p)+eps], by Monte Carlo.
std::vector<DeviationRow> large_deviation_stats(const LatticeModel& L, Mode mode, std::span<const int> n_list,
                                                double eps, const McParams& mc);
std::vector<DeviationRow> large_deviation_stats(const OccurrenceMc& occ, std::span<const int> n_list);
// (E_p(N_n) - Σ_window c_{n,m} p^n (1-p)^m) / E_p(N_n) from an interface table.
std::vector<DeviationRow> large_deviation_exact(const CountTable& T, double p, double eps, std::span<const int> n_list);

// g_n(p) = P_n(p)^{1/n} where P_n is the table polynomial at row n.
double decay_root(const CountTable& T, int n, double p);
// Derivative bound on [p, q]: |g_n(p) - g_n(q)| <= c·max(g(p), g(q))·exp(c|p-q|)·|p-q| with
// c = max over endpoints and table entries of |n/x - m/(1-x)| / n.
double lipschitz_bound(const CountTable& T, int n, double p, double q);
// Checks every adjacent pair of the grid for n = 1..n_max.
CheckReport decay_lipschitz_check(const CountTable& T, std::span<const double> p_grid, int n_max);

// Probability that o's open cluster reaches the boundary of the box of each radius.
std::vector<McEstimate> crossing_probability(const LatticeModel& L, Mode mode, std::span<const int> radii,
                                             const McParams& mc);

inline constexpr std::string_view kPercolateCsvHeader = "quantity,lattice,mode,p,n_or_L,value,stderr,samples,seed";

}  // namespace percolattice::percolation
