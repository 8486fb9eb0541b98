#include "percolattice/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "percolattice/lattice.hpp"

namespace percolattice::growth {

namespace {

Rational pow_q(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

void require_geodesic_axis(const CountTable& T) {
    const auto L = lattice::parse_lattice(T.lattice);
    if (L.family == lattice::Family::PlanarHexagonal || L.dual_shift) {
        throw std::invalid_argument("occurrence bound needs l = 1; not available on " + T.lattice);
    }
}

CheckReport envelope(std::string check, const CountTable& T) {
    CheckReport r;
    r.check = std::move(check);
    r.lattice = T.lattice;
    r.mode = std::string(to_string(T.mode));
    return r;
}

}  // namespace

double f_of_r(double r) {
    if (!(r > 0)) throw std::domain_error("f(r) needs r > 0");
    return std::exp((1 + r) * std::log1p(r) - r * std::log(r));
}

double r_of_p(double p) {
    if (!(p > 0 && p < 1)) throw std::domain_error("r(p) needs p in (0,1)");
    return (1 - p) / p;
}

double p_of_r(double r) {
    if (!(r > 0)) throw std::domain_error("p(r) needs r > 0");
    return 1 / (1 + r);
}

RatioWindow::RatioWindow(double r_, double eps_) : r(r_), eps(eps_) {
    if (!(r > 0) || !(eps >= 0) || !std::isfinite(r) || !std::isfinite(eps)) {
        throw std::domain_error("ratio window needs r > 0 and eps >= 0");
    }
}

std::pair<long, long> RatioWindow::range(int n) const {
    // Products like 0.1 * 30 land a hair off the integer; the slack keeps closed endpoints closed.
    const double slack = 1e-9 * std::max(1, n);
    const double lo = std::ceil((r - eps) * n - slack);
    const double hi = std::floor((r + eps) * n + slack);
    return {std::max(0L, static_cast<long>(lo)), static_cast<long>(std::min(hi, 1e15))};
}

std::uint64_t window_count(const CountTable& T, int n, const RatioWindow& w) {
    T.require_row(n);
    const auto [lo, hi] = w.range(n);
    std::uint64_t s = 0;
    for (const auto& [m, c] : T.row(n)) {
        if (m >= lo && m <= hi) s += c;
    }
    return s;
}

int GrowthEstimate::decreasing_steps() const {
    int k = 0;
    for (std::size_t i = 1; i < values.size(); ++i) k += values[i].second < values[i - 1].second;
    return k;
}

GrowthEstimate br_estimate(const CountTable& T, const RatioWindow& w, int n_min) {
    GrowthEstimate g{w, f_of_r(w.r + w.eps), {}};
    for (int n = std::max(1, n_min); n <= T.n_max; ++n) {
        const auto c = window_count(T, n, w);
        g.values.emplace_back(n, c == 0 ? 0.0 : std::pow(static_cast<double>(c), 1.0 / n));
    }
    return g;
}

void write_sequence_csv(std::ostream& os, std::span<const GrowthEstimate> estimates) {
    os << kSequenceCsvHeader << '\n';
    for (const auto& g : estimates) {
        for (const auto& [n, v] : g.values) os << fmt::format("{},{},{},{:.17g}\n", n, g.window.r, g.window.eps, v);
    }
}

std::vector<Rational> standard_p_grid() {
    std::vector<Rational> g;
    for (int k = 1; k <= 19; ++k) g.emplace_back(k, 20);
    return g;
}

std::vector<double> standard_r_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 24; ++k) g.push_back(0.25 * k);
    return g;
}

std::vector<double> standard_eps_grid() { return {0.25, 0.5, 1.0}; }

Rational occurrence_sum(const CountTable& T, int n, const Rational& p) {
    T.require_row(n);
    const Rational q = 1 - p;
    const Rational pn = pow_q(p, n);
    Rational s = 0;
    Rational qm = 1;
    int m_at = 0;
    for (const auto& [m, c] : T.row(n)) {
        while (m_at < m) qm *= q, ++m_at;
        s += Rational(c) * pn * qm;
    }
    return s;
}

CheckReport occurrence_bound_check(const CountTable& T, std::span<const Rational> p_grid) {
    require_geodesic_axis(T);
    auto rep = envelope("occurrence_bound", T);
    rep.params["n_max"] = T.n_max;
    rep.params["p_grid"] = nlohmann::ordered_json::array();
    for (const auto& p : p_grid) rep.params["p_grid"].push_back(p.str());
    rep.params["arithmetic"] = "exact rational";
    double worst = 0;
    int evaluated = 0;
    for (int n = 0; n <= T.n_max; ++n) {
        for (const auto& p : p_grid) {
            const Rational s = occurrence_sum(T, n, p);
            ++evaluated;
            worst = std::max(worst, to_double(s) / (n + 1));
            if (s > n + 1) {
                rep.fail_with({{"n", n}, {"p", p.str()}, {"sum", to_double(s)}, {"bound", n + 1}});
            }
        }
    }
    rep.details.push_back({{"evaluations", evaluated}, {"max_sum_over_bound", worst}});
    return rep;
}

CheckReport occurrence_tie_out(const CountTable& T, std::span<const RatioWindow> windows) {
    require_geodesic_axis(T);
    auto rep = envelope("occurrence_tie_out", T);
    rep.params["n_max"] = T.n_max;
    rep.params["slack"] = 1e-12;
    for (const auto& w : windows) {
        const double p = p_of_r(w.r);
        const double base = p * std::pow(1 - p, w.r + w.eps);
        for (int n = 1; n <= T.n_max; ++n) {
            const double v = static_cast<double>(window_count(T, n, w)) * std::pow(base, n);
            if (v > (n + 1) * (1 + 1e-12)) {
                rep.fail_with({{"n", n}, {"r", w.r}, {"eps", w.eps}, {"value", v}, {"bound", n + 1}});
            }
        }
    }
    return rep;
}

std::vector<CheegerRow> cheeger_interface_estimate(const CountTable& T) {
    std::vector<CheegerRow> out;
    int best_m = -1, best_n = 1;
    for (int N = 1; N <= T.n_max; ++N) {
        const auto row = T.row(N);
        if (!row.empty()) {
            const int m = row.begin()->first;
            if (best_m < 0 || static_cast<long>(m) * best_n < static_cast<long>(best_m) * N) best_m = m, best_n = N;
        }
        if (best_m < 0) continue;
        const double I = static_cast<double>(best_m) / best_n;
        out.push_back({N, best_m, best_n, I, 1 / (I + 1)});
    }
    if (out.empty()) throw std::invalid_argument("Cheeger estimate needs rows with n >= 1");
    return out;
}

CheckReport cheeger_report(const CountTable& T, std::optional<Rational> floor) {
    auto rep = envelope("cheeger", T);
    rep.params["n_max"] = T.n_max;
    if (floor) rep.params["floor"] = floor->str();
    rep.params["caveat"] = "I_N decreases toward I(G); 1/(I_N+1) increases toward the true bound";
    T.require_row(T.n_max);
    const auto rows = cheeger_interface_estimate(T);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        nlohmann::ordered_json d{{"N", r.N}, {"I_N", fmt::format("{}/{}", r.m, r.n)}, {"I_N_value", r.I},
                                 {"p_bound", r.p_bound}};
        const bool monotone = i == 0 || static_cast<long>(r.m) * rows[i - 1].n <= static_cast<long>(rows[i - 1].m) * r.n;
        const bool above = !floor || Rational(r.m, r.n) >= *floor;
        if (!monotone || !above) {
            d["violation"] = !monotone ? "I_N increased" : "I_N below floor";
            rep.fail_with(std::move(d));
        } else {
            rep.details.push_back(std::move(d));
        }
    }
    return rep;
}

CheckReport duality_table_check(const CountTable& site, const CountTable& inner) {
    CheckReport rep;
    rep.check = "duality_transpose";
    rep.lattice = site.lattice;
    rep.mode = "site";
    rep.params["n_max"] = site.n_max;
    if (site.object_class != ObjectClass::interface || site.mode != Mode::site ||
        inner.object_class != ObjectClass::inner_interface || site.lattice != inner.lattice) {
        throw std::invalid_argument("duality check needs a site-interface table and its inner table");
    }
    site.require_row(site.n_max);
    if (!inner.complete) throw IncompleteRow("inner table is not complete", inner.n_max);
    std::uint64_t compared = 0;
    const auto t = site.transposed();
    auto a = t.entries.begin();
    auto b = inner.entries.begin();
    while (a != t.entries.end() || b != inner.entries.end()) {
        if (b == inner.entries.end() || (a != t.entries.end() && a->first < b->first)) {
            rep.fail_with({{"n", a->first.first}, {"m", a->first.second}, {"transpose", a->second}, {"inner", 0}});
            ++a;
        } else if (a == t.entries.end() || b->first < a->first) {
            rep.fail_with({{"n", b->first.first}, {"m", b->first.second}, {"transpose", 0}, {"inner", b->second}});
            ++b;
        } else {
            if (a->second != b->second) {
                rep.fail_with({{"n", a->first.first}, {"m", a->first.second}, {"transpose", a->second},
                               {"inner", b->second}});
            }
            ++compared, ++a, ++b;
        }
    }
    rep.details.push_back({{"entries_compared", compared}});
    // Numerical echo of b_r = b_{1/r}^r: the site sequence at r against the inner one at 1/r, raised to r.
    nlohmann::ordered_json echo = nlohmann::ordered_json::array();
    for (const double r : {0.5, 1.0, 2.0}) {
        const int n = site.n_max;
        const auto c = window_count(site, n, RatioWindow(r, 0.5));
        const int n_dual = static_cast<int>(std::lround(r * n));
        std::uint64_t c_dual = 0;
        const auto [lo, hi] = RatioWindow(1 / r, 0.5 / r).range(n_dual);
        for (const auto& [m, k] : inner.row(n_dual)) c_dual += (m >= lo && m <= hi) ? k : 0;
        echo.push_back({{"r", r},
                        {"n", n},
                        {"site_root", c ? std::pow(static_cast<double>(c), 1.0 / n) : 0.0},
                        {"inner_root_pow_r", c_dual ? std::pow(std::pow(static_cast<double>(c_dual), 1.0 / n_dual), r) : 0.0},
                        {"asserted", false}});
    }
    rep.details.push_back({{"echo", echo}});
    return rep;
}

BigInt partition_count(int n) {
    if (n < 0) return 0;
    std::vector<BigInt> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1;
    for (int k = 1; k <= n; ++k) {
        BigInt s = 0;
        for (int j = 1;; ++j) {
            const int g1 = j * (3 * j - 1) / 2;
            if (g1 > k) break;
            const int g2 = j * (3 * j + 1) / 2;
            const BigInt term = p[static_cast<std::size_t>(k - g1)] + (g2 <= k ? p[static_cast<std::size_t>(k - g2)] : BigInt(0));
            if (j % 2) s += term; else s -= term;
        }
        p[static_cast<std::size_t>(k)] = s;
    }
    return p[static_cast<std::size_t>(n)];
}

double hardy_ramanujan(int n) {
    if (n < 1) throw std::domain_error("Hardy-Ramanujan asymptotic needs n >= 1");
    const double x = n;
    return std::exp(std::numbers::pi * std::sqrt(2 * x / 3)) / (4 * x * std::sqrt(3.0));
}

CheckReport concavity_diagnostic(const CountTable& T, double eps, std::span<const double> r_grid,
                                 std::span<const int> n_list) {
    auto rep = envelope("concavity", T);
    rep.params["eps"] = eps;
    rep.params["r_grid"] = std::vector<double>(r_grid.begin(), r_grid.end());
    rep.params["asserted"] = false;
    for (const int n : n_list) {
        std::vector<double> logv;
        for (const double r : r_grid) {
            const auto c = window_count(T, n, RatioWindow(r, eps));
            logv.push_back(c ? std::log(static_cast<double>(c)) / n : -HUGE_VAL);
        }
        int violations = 0, unbounded = 0;
        double worst = 0;
        for (std::size_t i = 1; i + 1 < logv.size(); ++i) {
            const double mid = (logv[i - 1] + logv[i + 1]) / 2;
            if (std::isinf(logv[i]) && !std::isinf(mid)) {
                ++unbounded;
                continue;
            }
            if (std::isinf(mid)) continue;
            if (mid > logv[i] + 1e-12) ++violations, worst = std::max(worst, mid - logv[i]);
        }
        rep.details.push_back({{"n", n}, {"violations", violations}, {"empty_between_nonempty", unbounded},
                               {"max_log_violation", worst}});
    }
    return rep;
}

}  // namespace percolattice::growth
