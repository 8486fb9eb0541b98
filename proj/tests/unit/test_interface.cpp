#include <gtest/gtest.h>

#include <memory>

#include "percolattice/interface.hpp"
#include "percolattice/percolation.hpp"

namespace {

using namespace percolattice;
using namespace percolattice::lattice;
using interface::Cluster;
using interface::Engine;

Vertex v(int x, int y) { return Vertex::of({x, y}); }

TEST(Interface, LoneVertexBond) {
    const auto L = parse_lattice("z2");
    const auto box = make_box(L, 8);
    Cluster C{Mode::bond, {v(0, 0)}, {}};
    const auto I = interface::extract_interface(L, C, box);
    EXPECT_TRUE(I.P.empty());
    EXPECT_EQ(I.boundary.size(), 4u);
    EXPECT_TRUE(interface::is_interface(L, I, box, v(0, 0)).ok());
    EXPECT_FALSE(interface::is_interface(L, I, box, v(3, 0)).separates);
}

TEST(Interface, LoneVertexSite) {
    const auto L = parse_lattice("tri");
    const auto I = interface::extract_interface(L, Cluster{Mode::site, {v(0, 0)}, {}}, make_box(L, 8));
    EXPECT_EQ(I.size(), 1u);
    EXPECT_EQ(I.boundary_size(), 6u);
}

TEST(Interface, SquareRingBond) {
    // The four edges of a unit square: interior is empty, boundary is the eight outward edges.
    const auto L = parse_lattice("z2");
    Cluster C{Mode::bond, {v(0, 0), v(1, 0), v(0, 1), v(1, 1)},
              {make_edge(v(0, 0), v(1, 0)), make_edge(v(0, 0), v(0, 1)), make_edge(v(1, 0), v(1, 1)),
               make_edge(v(0, 1), v(1, 1))}};
    const auto I = interface::extract_interface(L, C, make_box(L, 8));
    EXPECT_EQ(I.P.size(), 4u);
    EXPECT_EQ(I.boundary.size(), 8u);
}

TEST(Interface, InnerVertexOfBlockIsNotInSiteInterface) {
    // 3x3 block on the square lattice: the centre is not reachable from outside by a single face.
    const auto L = parse_lattice("z2");
    Cluster C{Mode::site, {}, {}};
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) C.vertices.push_back(v(x, y));
    const auto I = interface::extract_interface(L, C, make_box(L, 10));
    EXPECT_EQ(I.size(), 8u);
    EXPECT_EQ(std::count(I.P_sites.begin(), I.P_sites.end(), v(1, 1)), 0);
    EXPECT_EQ(I.boundary_size(), 12u);
}

TEST(Interface, MarginIsUncertifiable) {
    const auto L = parse_lattice("z2");
    const auto box = make_box(L, 6);
    EXPECT_THROW(interface::extract_interface(L, Cluster{Mode::site, {v(5, 0)}, {}}, box), interface::Uncertifiable);
}

TEST(Interface, DroppingAnEdgeBreaksTheCheck) {
    const auto L = parse_lattice("z2");
    const BoxGraph G(L, make_box(L, 10));
    Engine engine(G);
    interface::DenseCluster C;
    C.mode = Mode::bond;
    for (int x = 0; x < 3; ++x) C.vertices.push_back(*G.find(v(x, 0)));
    C.edges = {*G.find(make_edge(v(0, 0), v(1, 0))), *G.find(make_edge(v(1, 0), v(2, 0)))};
    const auto I = engine.extract(C);
    ASSERT_TRUE(engine.check(Mode::bond, I.P, I.boundary, I.anchor).ok());
    auto P = I.P;
    P.pop_back();
    EXPECT_FALSE(engine.check(Mode::bond, P, I.boundary, I.anchor).p_matches);
    auto B = I.boundary;
    B.pop_back();
    EXPECT_FALSE(engine.check(Mode::bond, I.P, B, I.anchor).ok());
}

TEST(Interface, PlanarAndOuterShellAgreeOnSamples) {
    for (const char* s : {"z2", "tri"}) {
        const auto L = parse_lattice(s);
        const auto G = std::make_shared<const BoxGraph>(L, make_box(L, 12));
        Engine engine(*G);
        for (std::uint64_t k = 0; k < 100; ++k) {
            const Mode mode = L.triangulated ? Mode::site : Mode::bond;
            const auto oc = percolation::origin_cluster(percolation::sample_config(G, mode, 0.45, 3, k));
            if (oc.empty || oc.reaches_margin) continue;
            const auto I = engine.extract(oc.cluster);
            if (mode == Mode::bond) {
                const auto J = engine.extract_planar(oc.cluster);
                EXPECT_EQ(J.P, I.P);
                EXPECT_EQ(J.boundary, I.boundary);
            } else {
                const auto J = engine.site_of_induced(oc.cluster.vertices);
                EXPECT_EQ(J.P_sites, I.P_sites);
                EXPECT_EQ(J.boundary_sites, I.boundary_sites);
            }
        }
    }
}

TEST(Interface, OccursInItsOwnConfiguration) {
    const auto L = parse_lattice("z2");
    const auto G = std::make_shared<const BoxGraph>(L, make_box(L, 12));
    Engine engine(*G);
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto omega = percolation::sample_config(G, Mode::bond, 0.4, 5, k);
        const auto oc = percolation::origin_cluster(omega);
        if (oc.reaches_margin) continue;
        const auto I = interface::to_coordinates(*G, engine.extract(oc.cluster));
        EXPECT_TRUE(interface::occurs(I, omega));
    }
}

TEST(Interface, JsonRoundTrip) {
    const auto L = parse_lattice("tri");
    const auto box = make_box(L, 8);
    Cluster C{Mode::site, {v(0, 0), v(1, 0), v(1, 1)}, {}};
    const auto I = interface::extract_interface(L, C, box);
    EXPECT_EQ(interface::interface_from_json(interface::to_json(L, I, box)), I);
}

TEST(Interface, InnerInterfaceSwapsRoles) {
    const auto L = parse_lattice("tri");
    const auto box = make_box(L, 10);
    Cluster C{Mode::site, {v(0, 0), v(1, 0)}, {}};
    const auto I = interface::extract_interface(L, C, box);
    const auto inner = interface::to_inner(L, I);
    EXPECT_EQ(inner.size(), I.boundary_size());
    EXPECT_EQ(inner.boundary_size(), I.size());
    EXPECT_TRUE(interface::is_inner_interface(L, inner, box, v(0, 0)).ok());
}

TEST(Interface, DualCycleOfBondInterface) {
    const auto L = parse_lattice("z2");
    const auto box = make_box(L, 8);
    Cluster C{Mode::bond, {v(0, 0), v(1, 0)}, {make_edge(v(0, 0), v(1, 0))}};
    const auto I = interface::extract_interface(L, C, box);
    EXPECT_EQ(interface::dual_cycle(L, I, box).size(), I.boundary.size());
}

}  // namespace
