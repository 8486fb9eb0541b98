#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "percolattice/count_table.hpp"
#include "percolattice/report.hpp"

namespace percolattice::growth {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// (1+r)^{1+r} / r^r, with the limit 1 at r -> 0+.
double f_of_r(double r);
double r_of_p(double p);
double p_of_r(double r);

struct RatioWindow {
    double r = 1;
    double eps = 0;

    RatioWindow(double r, double eps);
    // Integer boundary sizes m with (r-eps)n <= m <= (r+eps)n; empty when first > second.
    std::pair<long, long> range(int n) const;
};

std::uint64_t window_count(const CountTable& T, int n, const RatioWindow& w);

struct GrowthEstimate {
    RatioWindow window;
    double f_bound = 0;  // f(r + eps)
    std::vector<std::pair<int, double>> values;  // (n, c_{n,r,eps}^{1/n})

    // Number of n where the sequence drops; a trend figure, nothing is asserted on it.
    int decreasing_steps() const;
};

GrowthEstimate br_estimate(const CountTable& T, const RatioWindow& w, int n_min = 1);

inline constexpr std::string_view kSequenceCsvHeader = "n,r,eps,value";
void write_sequence_csv(std::ostream& os, std::span<const GrowthEstimate> estimates);

// k/20 for k = 1..19.
std::vector<Rational> standard_p_grid();
std::vector<double> standard_r_grid();    // 0.25, 0.5, ..., 6
std::vector<double> standard_eps_grid();  // 0.25, 0.5, 1

// Exact Σ_m T(n,m) p^n (1-p)^m.
Rational occurrence_sum(const CountTable& T, int n, const Rational& p);

// Σ_m T(n,m) p^n (1-p)^m <= n+1 for every row and grid point, in exact arithmetic. Only lattices whose
// first axis is a geodesic are accepted; throws std::invalid_argument otherwise.
CheckReport occurrence_bound_check(const CountTable& T, std::span<const Rational> p_grid);
// At p = 1/(1+r): window_count * (p (1-p)^{r+eps})^n <= n+1, in floating point with 1e-12 relative slack.
CheckReport occurrence_tie_out(const CountTable& T, std::span<const RatioWindow> windows);

struct CheegerRow {
    int N = 0;
    int m = 0;  // I_N = m / n exactly
    int n = 0;
    double I = 0;
    double p_bound = 0;  // 1 / (I_N + 1)
};

// I_N = min |∂P|/|P| over the table's interfaces with 1 <= |P| <= N. Throws on a table without such rows.
std::vector<CheegerRow> cheeger_interface_estimate(const CountTable& T);
// Asserts I_N nonincreasing, and I_N >= floor when a floor is given.
CheckReport cheeger_report(const CountTable& T, std::optional<Rational> floor = std::nullopt);

// Inner-interface table against the transpose of the site-interface table, restricted to site sizes
// <= site.n_max. Also echoes the asymptotic duality numerically without asserting it.
CheckReport duality_table_check(const CountTable& site, const CountTable& inner);

BigInt partition_count(int n);
double hardy_ramanujan(int n);

// Midpoint log-concavity of r -> c_{n,r,eps}^{1/n} on an r-grid, per n. Diagnostic only: pass is
// always true and the violations are reported.
CheckReport concavity_diagnostic(const CountTable& T, double eps, std::span<const double> r_grid,
                                 std::span<const int> n_list);

}  // namespace percolattice::growth
