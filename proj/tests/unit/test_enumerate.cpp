#include <gtest/gtest.h>

#include <vector>

#include "percolattice/enumerate.hpp"

namespace {

using namespace percolattice;
using namespace percolattice::enumerate;
using lattice::parse_lattice;

Options upto(int n, unsigned threads = 1) {
    Options o;
    o.n_max = n;
    o.threads = threads;
    return o;
}

std::vector<std::uint64_t> totals(const CountTable& t) {
    std::vector<std::uint64_t> out;
    for (int n = 0; n <= t.n_max; ++n) out.push_back(t.row_total(n));
    return out;
}

// Row totals below were first produced by the test oracle (n <= 6/8) and then frozen.
TEST(Enumerate, SquareSiteAnimals) {
    EXPECT_EQ(totals(enumerate_site_animals(parse_lattice("z2"), upto(8))),
              (std::vector<std::uint64_t>{0, 1, 4, 18, 76, 315, 1296, 5320, 21800}));
}

TEST(Enumerate, SquareBondAnimals) {
    EXPECT_EQ(totals(enumerate_bond_animals(parse_lattice("z2"), upto(7))),
              (std::vector<std::uint64_t>{1, 4, 18, 88, 439, 2224, 11342, 58168}));
}

TEST(Enumerate, SquareBondInterfaces) {
    EXPECT_EQ(totals(enumerate_interfaces(parse_lattice("z2"), Mode::bond, upto(7))),
              (std::vector<std::uint64_t>{1, 4, 18, 88, 439, 2224, 11346, 58204}));
}

TEST(Enumerate, SquareSiteInterfaces) {
    EXPECT_EQ(totals(enumerate_interfaces(parse_lattice("z2"), Mode::site, upto(8))),
              (std::vector<std::uint64_t>{0, 1, 4, 18, 76, 315, 1296, 5324, 21841}));
}

TEST(Enumerate, TriangularSiteInterfaces) {
    EXPECT_EQ(totals(enumerate_interfaces(parse_lattice("tri"), Mode::site, upto(7))),
              (std::vector<std::uint64_t>{0, 1, 6, 33, 176, 930, 4885, 25569}));
}

TEST(Enumerate, SingletonRows) {
    const auto z3 = parse_lattice("z3");
    const auto t = enumerate_interfaces(z3, Mode::site, upto(1));
    EXPECT_EQ(t.at(1, 6), 1u);
    const auto b = enumerate_interfaces(z3, Mode::bond, upto(1));
    EXPECT_EQ(b.at(0, 6), 1u);
    EXPECT_EQ(b.at(1, 10), 6u);
}

TEST(Enumerate, ThreadCountDoesNotChangeTables) {
    const auto L = parse_lattice("tri");
    EXPECT_EQ(enumerate_interfaces(L, Mode::bond, upto(5, 1)), enumerate_interfaces(L, Mode::bond, upto(5, 3)));
    EXPECT_EQ(enumerate_site_animals(L, upto(6, 1)), enumerate_site_animals(L, upto(6, 4)));
}

TEST(Enumerate, StreamedClassesMatchTable) {
    const auto L = parse_lattice("z2");
    const auto classes = interface_classes(L, Mode::site, upto(6));
    EXPECT_EQ(table_of(L, Mode::site, classes, 6), enumerate_interfaces(L, Mode::site, upto(6)));
}

TEST(Enumerate, PlateauMatchesFixedPoint) {
    const auto L = parse_lattice("tri");
    PlateauReport rep;
    const auto plateau = enumerate_site_interfaces_triangulated(L, upto(5), &rep);
    EXPECT_TRUE(rep.certified);
    EXPECT_EQ(plateau.entries, enumerate_interfaces(L, Mode::site, upto(5)).entries);
}

TEST(Enumerate, InnerIsTransposeOfSite) {
    const auto L = parse_lattice("tri");
    const auto site = enumerate_interfaces(L, Mode::site, upto(6));
    const auto inner = enumerate_inner_interfaces(L, upto(6));
    for (const auto& [key, c] : inner.entries) EXPECT_EQ(site.at(key.second, key.first), c);
}

TEST(Enumerate, BudgetIsEnforced) {
    Options o = upto(8);
    o.budget = 100;
    EXPECT_THROW(enumerate_interfaces(parse_lattice("z2"), Mode::bond, o), BudgetExceeded);
}

TEST(Enumerate, MultiInterfaceCap) {
    EXPECT_THROW(enumerate_multi_interfaces(parse_lattice("z2"), Mode::bond, upto(kMultiMaxN + 1)), BudgetExceeded);
}

TEST(Enumerate, MultiSingleParts) {
    // With one part allowed, multi-interfaces are just interfaces.
    const auto L = parse_lattice("z2");
    EXPECT_EQ(enumerate_multi_interfaces(L, Mode::site, upto(5), 1).entries,
              enumerate_interfaces(L, Mode::site, upto(5)).entries);
}

TEST(Enumerate, HexagonalCountsBothOrbits) {
    // Every hexagonal bond animal of size 1 contains a vertex from each orbit.
    const auto t = enumerate_bond_animals(parse_lattice("hex"), upto(1));
    EXPECT_EQ(t.row_total(1), 3u);
}

}  // namespace
