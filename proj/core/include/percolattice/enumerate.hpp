#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "percolattice/box_graph.hpp"
#include "percolattice/count_table.hpp"
#include "percolattice/interface.hpp"

namespace percolattice::enumerate {

using lattice::BoxGraph;
using lattice::LatticeModel;
using lattice::Vertex;
using lattice::VertexId;
using lattice::EdgeId;

struct Options {
    int n_max = 0;
    unsigned threads = 1;
    std::uint64_t budget = 0;  // max objects visited, 0 = unlimited
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Box large enough to hold every translation-class representative of size n_max, plus the margin.
lattice::Box enumeration_box(const LatticeModel& L, int n_max);

// Orbit representatives of the translation action: o, and (1,0) on the hexagonal lattice.
std::vector<VertexId> orbit_roots(const BoxGraph& G);

// Redelmeier growth over cells (edges in bond mode, vertices in site mode). Every translation class
// of connected cell sets of size 1..n_max is visited once: the representative whose least vertex is
// an orbit root. Cells are passed in insertion order.
class AnimalWalker {
public:
    using Visit = std::function<void(std::span<const std::uint32_t> cells)>;

    AnimalWalker(const BoxGraph& G, Mode mode, int n_max);
    // Visits the share of worker `worker` out of `workers`; shares partition the classes.
    void run(const Visit& visit, unsigned worker = 0, unsigned workers = 1);
    void set_budget(std::atomic<std::uint64_t>* counter, std::uint64_t budget) { counter_ = counter, budget_ = budget; }

private:
    void grow(std::vector<std::uint32_t>& untried, const Visit& visit);
    template <class F>
    void for_neighbour_cells(std::uint32_t c, F&& f) const;

    const BoxGraph& G_;
    Mode mode_;
    int n_max_;
    std::uint32_t root_ = 0;
    std::vector<std::uint32_t> animal_;
    std::vector<std::uint8_t> reached_;
    unsigned worker_ = 0, workers_ = 1;
    std::uint64_t split_counter_ = 0;
    std::atomic<std::uint64_t>* counter_ = nullptr;
    std::uint64_t budget_ = 0;
};

CountTable enumerate_site_animals(const LatticeModel& L, const Options& opt);
CountTable enumerate_bond_animals(const LatticeModel& L, const Options& opt);

// A translation class of interfaces together with the number of its translates that are interfaces of o.
struct InterfaceClass {
    interface::Interface rep;
    std::uint64_t multiplicity = 0;
};

// Every interface P is the fixed point of extraction applied to the cluster P itself, so the classes
// with |P| <= n_max are exactly the animals A of size <= n_max whose extracted interface is A.
// Streams every class as a dense interface on the enumeration box, with its multiplicity. With
// several threads the visitor runs concurrently; `worker` is below max(1, opt.threads).
using ClassVisitor = std::function<void(unsigned worker, interface::Engine& engine,
                                        const interface::DenseInterface& I, std::uint64_t multiplicity)>;
void visit_interface_classes(const LatticeModel& L, Mode mode, const Options& opt, const ClassVisitor& visit);
std::vector<InterfaceClass> interface_classes(const LatticeModel& L, Mode mode, const Options& opt);
CountTable enumerate_interfaces(const LatticeModel& L, Mode mode, const Options& opt);
CountTable table_of(const LatticeModel& L, Mode mode, std::span<const InterfaceClass> classes, int n_max);
// The translates that are interfaces of o, on one shared box graph.
std::vector<interface::DenseInterface> interfaces_of_origin(const BoxGraph& G, std::span<const InterfaceClass> classes);

struct PlateauReport {
    int n_max = 0;
    int max_d_size = 0;   // largest D̄ that produced an interface with |P| <= n_max
    int grown_to = 0;     // largest |D| enumerated
    bool certified = false;
};

// Hole-free D ∋ o grown until one full layer of D sizes adds no interface with |P| <= n_max.
CountTable enumerate_site_interfaces_triangulated(const LatticeModel& L, const Options& opt,
                                                  PlateauReport* report = nullptr);

struct MultiReport {
    std::uint64_t collections = 0;
    std::uint64_t nested = 0;      // one component lies in the finite region of the other (chains for triples)
    std::uint64_t not_nested = 0;
};

inline constexpr int kMultiMaxN = 8;

// Unordered collections of 1 to max_parts pairwise disjoint interfaces of o with total size <= n_max.
// Disjoint means the supports P ∪ ∂P share no edge (bond) or vertex (site).
CountTable enumerate_multi_interfaces(const LatticeModel& L, Mode mode, const Options& opt, int max_parts = 3,
                                      MultiReport* report = nullptr);

// Inner interfaces (∂P, P) of the site interfaces of o on a triangulated lattice, counted directly.
CountTable enumerate_inner_interfaces(const LatticeModel& L, const Options& opt);

}  // namespace percolattice::enumerate
