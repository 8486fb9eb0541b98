#include <gtest/gtest.h>

#include <cmath>

#include "percolattice/enumerate.hpp"
#include "percolattice/growth.hpp"

namespace {

using namespace percolattice;
using namespace percolattice::growth;

CountTable tiny() {
    CountTable t;
    t.object_class = ObjectClass::interface;
    t.lattice = "z2";
    t.n_max = 2;
    t.complete = true;
    t.add(0, 4, 1);
    t.add(1, 6, 4);
    t.add(2, 7, 8);
    t.add(2, 8, 10);
    return t;
}

TEST(Growth, FValues) {
    EXPECT_DOUBLE_EQ(f_of_r(1), 4);
    EXPECT_NEAR(f_of_r(1e-12), 1, 1e-9);
    EXPECT_NEAR(f_of_r(2), 27.0 / 4, 1e-12);
    EXPECT_THROW(f_of_r(-1), std::domain_error);
}

TEST(Growth, RatioAndProbability) {
    EXPECT_DOUBLE_EQ(r_of_p(0.5), 1);
    EXPECT_DOUBLE_EQ(p_of_r(3), 0.25);
    EXPECT_THROW(r_of_p(0), std::domain_error);
    EXPECT_THROW(p_of_r(-0.5), std::domain_error);
    for (double r : standard_r_grid()) EXPECT_NEAR(r_of_p(p_of_r(r)), r, 1e-12);
}

TEST(Growth, WindowRange) {
    EXPECT_EQ(RatioWindow(1, 0.5).range(10), (std::pair<long, long>{5, 15}));
    EXPECT_EQ(RatioWindow(0.25, 1).range(4), (std::pair<long, long>{0, 5}));
    EXPECT_THROW(RatioWindow(1, -0.1), std::domain_error);
    const auto t = tiny();
    EXPECT_EQ(window_count(t, 2, RatioWindow(3.5, 0.01)), 8u);
    EXPECT_EQ(window_count(t, 2, RatioWindow(3.75, 0.25)), 18u);
}

TEST(Growth, OccurrenceSumIsExact) {
    const auto t = tiny();
    EXPECT_EQ(occurrence_sum(t, 1, Rational(1, 2)), Rational(4, 128));
    EXPECT_EQ(occurrence_sum(t, 0, Rational(1, 3)), Rational(16, 81));
}

TEST(Growth, OccurrenceBoundOnSquareBond) {
    const auto T = enumerate::enumerate_interfaces(lattice::parse_lattice("z2"), Mode::bond, {7});
    EXPECT_TRUE(occurrence_bound_check(T, standard_p_grid()).pass);
    std::vector<RatioWindow> w;
    for (double r : standard_r_grid()) w.emplace_back(r, 0.5);
    EXPECT_TRUE(occurrence_tie_out(T, w).pass);
}

TEST(Growth, OccurrenceBoundNeedsGeodesicAxis) {
    CountTable t = tiny();
    t.lattice = "hex";
    EXPECT_THROW(occurrence_bound_check(t, standard_p_grid()), std::invalid_argument);
}

TEST(Growth, Cheeger) {
    const auto T = enumerate::enumerate_interfaces(lattice::parse_lattice("z2"), Mode::bond, {6});
    const auto rows = cheeger_interface_estimate(T);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_DOUBLE_EQ(rows[0].I, 6);
    EXPECT_DOUBLE_EQ(rows[5].I, 10.0 / 6);
    EXPECT_TRUE(cheeger_report(T, Rational(1, 2)).pass);
    EXPECT_FALSE(cheeger_report(T, Rational(2)).pass);
}

TEST(Growth, DualityDetectsMismatch) {
    const auto L = lattice::parse_lattice("tri");
    const auto site = enumerate::enumerate_interfaces(L, Mode::site, {5});
    auto inner = enumerate::enumerate_inner_interfaces(L, {5});
    EXPECT_TRUE(duality_table_check(site, inner).pass);
    inner.add(inner.entries.begin()->first.first, inner.entries.begin()->first.second, 1);
    EXPECT_FALSE(duality_table_check(site, inner).pass);
}

TEST(Growth, Partitions) {
    EXPECT_EQ(partition_count(0), 1);
    EXPECT_EQ(partition_count(5), 7);
    EXPECT_EQ(partition_count(100), BigInt("190569292"));
    EXPECT_EQ(partition_count(200), BigInt("3972999029388"));
    EXPECT_NEAR(static_cast<double>(partition_count(100)) / hardy_ramanujan(100), 1, 0.05);
}

TEST(Growth, EstimateSequence) {
    const auto T = enumerate::enumerate_interfaces(lattice::parse_lattice("z2"), Mode::bond, {6});
    const auto e = br_estimate(T, RatioWindow(2, 0.5));
    EXPECT_DOUBLE_EQ(e.f_bound, f_of_r(2.5));
    for (const auto& [n, value] : e.values) EXPECT_LE(value, e.f_bound);
}

}  // namespace
