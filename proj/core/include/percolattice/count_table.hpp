#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "percolattice/lattice.hpp"

namespace percolattice {

enum class ObjectClass : std::uint8_t { animal, interface, multi_interface, inner_interface };

std::string_view to_string(ObjectClass c);
ObjectClass parse_object_class(std::string_view s);

class IncompleteRow : public std::runtime_error {
public:
    IncompleteRow(const std::string& what, int row) : std::runtime_error(what), row(row) {}
    int row;
};

// Exact counts by (size n, boundary size m).
struct CountTable {
    ObjectClass object_class = ObjectClass::animal;
    Mode mode = Mode::bond;
    std::string lattice;
    int n_max = 0;
    bool complete = false;
    std::string certification = "exhaustive";
    std::map<std::pair<int, int>, std::uint64_t> entries;

    std::uint64_t at(int n, int m) const;
    void add(int n, int m, std::uint64_t count);
    void merge(const CountTable& other);
    std::uint64_t row_total(int n) const;
    std::map<int, std::uint64_t> row(int n) const;
    // Throws IncompleteRow unless rows 0..n are certified exhaustive.
    void require_row(int n) const;
    // Swaps the roles of n and m; used for inner interfaces.
    CountTable transposed() const;

    friend bool operator==(const CountTable& a, const CountTable& b) {
        return a.object_class == b.object_class && a.mode == b.mode && a.lattice == b.lattice &&
               a.n_max == b.n_max && a.complete == b.complete && a.entries == b.entries;
    }
};

inline constexpr std::string_view kCountCsvHeader = "class,mode,lattice,n,m,count";

void write_csv(std::ostream& os, const CountTable& t);
// Reads rows of one table; metadata that the CSV cannot carry comes from the sidecar.
CountTable read_csv(std::istream& is);
nlohmann::ordered_json sidecar(const CountTable& t, std::string_view tool_version);
void apply_sidecar(CountTable& t, const nlohmann::json& j);

}  // namespace percolattice
