#include <gtest/gtest.h>

#include "oracle.hpp"
#include "percolattice/enumerate.hpp"

namespace {

using percolattice::Mode;
using percolattice::lattice::make_edge;
using percolattice::lattice::parse_lattice;
using percolattice::lattice::Vertex;

Vertex v(int x, int y) { return Vertex::of({x, y}); }

TEST(Oracle, LoneVertexIsAnInterface) {
    const auto L = parse_lattice("z2");
    oracle::EdgeSet S;
    for (auto [x, y] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) S.insert(make_edge(v(0, 0), v(x, y)));
    const auto P = oracle::interface_for(L, S, v(0, 0));
    ASSERT_TRUE(P.has_value());
    EXPECT_TRUE(P->empty());
    EXPECT_EQ(oracle::enclosed_vertices(L, S), 1u);
}

TEST(Oracle, MissingBoundaryEdgeIsRejected) {
    const auto L = parse_lattice("z2");
    oracle::EdgeSet S;
    for (auto [x, y] : {std::pair{1, 0}, {-1, 0}, {0, 1}}) S.insert(make_edge(v(0, 0), v(x, y)));
    EXPECT_FALSE(oracle::interface_for(L, S, v(0, 0)).has_value());
}

TEST(Oracle, SquareRingKeepsInnerEdgesOutOfBoundary) {
    // Unit square of open edges: the four outer corners each have two vacant edges, nothing inside.
    const auto L = parse_lattice("z2");
    oracle::EdgeSet S;
    for (int x : {0, 1})
        for (int y : {0, 1}) {
            S.insert(make_edge(v(x, y), v(x == 0 ? -1 : 2, y)));
            S.insert(make_edge(v(x, y), v(x, y == 0 ? -1 : 2)));
        }
    const auto P = oracle::interface_for(L, S, v(0, 0));
    ASSERT_TRUE(P.has_value());
    EXPECT_EQ(P->size(), 4u);
}

struct Case {
    const char* lattice;
    Mode mode;
    int n;
};

class OracleAgreement : public ::testing::TestWithParam<Case> {};

TEST_P(OracleAgreement, AnimalsAndInterfaces) {
    const auto [name, mode, n] = GetParam();
    const auto L = parse_lattice(name);
    percolattice::enumerate::Options opt;
    opt.n_max = n;
    const auto lib_animals = mode == Mode::bond ? percolattice::enumerate::enumerate_bond_animals(L, opt)
                                                : percolattice::enumerate::enumerate_site_animals(L, opt);
    EXPECT_EQ(oracle::animals(L, mode, n).entries, lib_animals.entries);
    EXPECT_EQ(oracle::interfaces(L, mode, n).entries,
              percolattice::enumerate::enumerate_interfaces(L, mode, opt).entries);
}

INSTANTIATE_TEST_SUITE_P(Small, OracleAgreement,
                         ::testing::Values(Case{"z2", Mode::bond, 4}, Case{"z2", Mode::site, 5},
                                           Case{"tri", Mode::site, 4}, Case{"tri", Mode::bond, 3},
                                           Case{"sq", Mode::bond, 3}));

}  // namespace
