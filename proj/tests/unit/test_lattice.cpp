#include <gtest/gtest.h>

#include "percolattice/box_graph.hpp"
#include "percolattice/lattice.hpp"

namespace {

using namespace percolattice::lattice;

TEST(Lattice, NamesRoundTrip) {
    for (const char* s : {"z2", "z3", "z4", "t2", "t3", "sq", "sq*", "tri", "hex"})
        EXPECT_EQ(lattice_name(parse_lattice(s)), s);
    EXPECT_THROW(parse_lattice("q7"), std::invalid_argument);
    EXPECT_THROW(parse_lattice("z0"), std::invalid_argument);
}

TEST(Lattice, BasisBounds) {
    EXPECT_EQ(parse_lattice("z3").basis_bound, 4);
    EXPECT_EQ(parse_lattice("sq").basis_bound, 4);
    EXPECT_EQ(parse_lattice("t2").basis_bound, 3);
    EXPECT_EQ(parse_lattice("tri").basis_bound, 3);
    EXPECT_EQ(parse_lattice("hex").basis_bound, 6);
    EXPECT_TRUE(parse_lattice("tri").triangulated);
    EXPECT_FALSE(parse_lattice("z2").triangulated);
}

TEST(Lattice, Degrees) {
    const auto deg = [](const char* s, Vertex v) { return neighbors(parse_lattice(s), v).size(); };
    EXPECT_EQ(deg("z2", Vertex::of({3, -2})), 4u);
    EXPECT_EQ(deg("z3", Vertex::of({0, 1, 2})), 6u);
    EXPECT_EQ(deg("tri", Vertex::of({5, 7})), 6u);
    EXPECT_EQ(deg("hex", Vertex::of({0, 0})), 3u);
    EXPECT_EQ(deg("hex", Vertex::of({1, 0})), 3u);
}

class EveryLattice : public ::testing::TestWithParam<const char*> {};

TEST_P(EveryLattice, AdjacencyIsSymmetric) {
    const auto L = parse_lattice(GetParam());
    const Vertex o = Vertex::origin(L.dimension);
    for (const Vertex& w : neighbors(L, o)) {
        EXPECT_TRUE(adjacent(L, w, o));
        const auto back = neighbors(L, w);
        EXPECT_NE(std::find(back.begin(), back.end(), o), back.end());
    }
}

TEST_P(EveryLattice, BasisCyclesAreShortCycles) {
    const auto L = parse_lattice(GetParam());
    const Vertex o = Vertex::origin(L.dimension);
    for (const Vertex& w : neighbors(L, o)) {
        const auto cycles = basis_cycles_through(L, make_edge(o, w));
        EXPECT_FALSE(cycles.empty());
        for (const BasisCycle& c : cycles) {
            EXPECT_LE(static_cast<int>(c.length()), L.basis_bound);
            EXPECT_TRUE(c.contains(make_edge(o, w)));
            for (std::size_t i = 0; i < c.length(); ++i)
                EXPECT_TRUE(adjacent(L, c.vertices[i], c.vertices[(i + 1) % c.length()]));
        }
    }
}

TEST_P(EveryLattice, AnchoredCyclesStartAtTheirLeastVertex) {
    const auto L = parse_lattice(GetParam());
    const Vertex o = Vertex::origin(L.dimension);
    for (const BasisCycle& c : anchored_cycles(L, o))
        EXPECT_EQ(*std::min_element(c.vertices.begin(), c.vertices.end()), o);
}

INSTANTIATE_TEST_SUITE_P(All, EveryLattice, ::testing::Values("z2", "z3", "t2", "t3", "sq", "sq*", "tri", "hex"));

TEST(Lattice, MarginBelowBasisBoundIsRejected) {
    const auto L = parse_lattice("hex");
    EXPECT_THROW(make_box(L, 20, 5), std::invalid_argument);
    EXPECT_EQ(make_box(L, 20).margin, 6);
}

TEST(Lattice, HexagonalOrbits) {
    const auto L = parse_lattice("hex");
    EXPECT_FALSE(same_orbit(L, Vertex::of({0, 0}), Vertex::of({1, 0})));
    EXPECT_TRUE(same_orbit(parse_lattice("z2"), Vertex::of({0, 0}), Vertex::of({1, 0})));
}

TEST(BoxGraph, IndexRoundTrip) {
    for (const char* s : {"z2", "z3", "tri", "hex"}) {
        const auto L = parse_lattice(s);
        const BoxGraph G(L, make_box(L, L.dimension == 2 ? 9 : 6));
        for (VertexId v = 0; v < G.vertex_count(); ++v) ASSERT_EQ(G.find(G.vertex(v)), v) << s;
        for (EdgeId e = 0; e < G.edge_count(); ++e) {
            ASSERT_EQ(G.find(G.edge(e)), e) << s;
            ASSERT_EQ(G.edge_between(G.lo(e), G.hi(e)), e) << s;
        }
        EXPECT_EQ(G.vertex(G.center()), Vertex::origin(L.dimension));
        EXPECT_TRUE(G.on_boundary(0));
    }
}

TEST(BoxGraph, CyclesMatchCoordinateBasis) {
    const auto L = parse_lattice("tri");
    const BoxGraph G(L, make_box(L, 8));
    const auto o = G.center();
    for (const auto& inc : G.incident(o)) {
        const auto expected = basis_cycles_through(L, G.edge(inc.edge));
        EXPECT_EQ(G.cycles_of_edge(inc.edge).size(), expected.size());
    }
}

TEST(Dual, SquareEdgeCrossesOneDualEdge) {
    const auto L = parse_lattice("sq");
    const auto d = dual_edge(L, make_edge(Vertex::of({0, 0}), Vertex::of({1, 0})));
    EXPECT_TRUE(adjacent(d.model, d.edge.a, d.edge.b));
    const auto back = dual_edge(d.model, d.edge);
    EXPECT_TRUE(adjacent(back.model, back.edge.a, back.edge.b));
}

}  // namespace
