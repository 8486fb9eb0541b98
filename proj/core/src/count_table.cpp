#include "percolattice/count_table.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace percolattice {

std::string_view to_string(ObjectClass c) {
    switch (c) {
        case ObjectClass::animal: return "animal";
        case ObjectClass::interface: return "interface";
        case ObjectClass::multi_interface: return "multi";
        case ObjectClass::inner_interface: return "inner";
    }
    return "?";
}

ObjectClass parse_object_class(std::string_view s) {
    if (s == "animal" || s == "animals") return ObjectClass::animal;
    if (s == "interface" || s == "interfaces") return ObjectClass::interface;
    if (s == "multi" || s == "multi_interface" || s == "multi-interface") return ObjectClass::multi_interface;
    if (s == "inner" || s == "inner_interface" || s == "inner-interface") return ObjectClass::inner_interface;
    throw std::invalid_argument("unknown object class: " + std::string(s));
}

std::uint64_t CountTable::at(int n, int m) const {
    const auto it = entries.find({n, m});
    return it == entries.end() ? 0 : it->second;
}

void CountTable::add(int n, int m, std::uint64_t count) {
    if (count == 0) return;
    auto& slot = entries[{n, m}];
    if (slot > std::numeric_limits<std::uint64_t>::max() - count) throw std::overflow_error("count overflow");
    slot += count;
}

void CountTable::merge(const CountTable& other) {
    for (const auto& [key, c] : other.entries) add(key.first, key.second, c);
}

std::uint64_t CountTable::row_total(int n) const {
    std::uint64_t s = 0;
    for (auto it = entries.lower_bound({n, std::numeric_limits<int>::min()}); it != entries.end() && it->first.first == n;
         ++it) {
        s += it->second;
    }
    return s;
}

std::map<int, std::uint64_t> CountTable::row(int n) const {
    std::map<int, std::uint64_t> out;
    for (auto it = entries.lower_bound({n, std::numeric_limits<int>::min()}); it != entries.end() && it->first.first == n;
         ++it) {
        out[it->first.second] = it->second;
    }
    return out;
}

void CountTable::require_row(int n) const {
    if (n < 0 || n > n_max || !complete) {
        throw IncompleteRow("row n=" + std::to_string(n) + " of " + std::string(to_string(object_class)) + "," +
                                std::string(to_string(mode)) + "," + lattice + " is not certified complete",
                            n);
    }
}

CountTable CountTable::transposed() const {
    CountTable t = *this;
    t.entries.clear();
    for (const auto& [key, c] : entries) t.entries[{key.second, key.first}] = c;
    return t;
}

void write_csv(std::ostream& os, const CountTable& t) {
    os << kCountCsvHeader << '\n';
    for (const auto& [key, c] : t.entries) {
        os << to_string(t.object_class) << ',' << to_string(t.mode) << ',' << t.lattice << ',' << key.first << ','
           << key.second << ',' << c << '\n';
    }
}

CountTable read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCountCsvHeader) throw std::runtime_error("bad count table header");
    CountTable t;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 6) throw std::runtime_error("bad count table row: " + line);
        const ObjectClass c = parse_object_class(f[0]);
        const Mode m = parse_mode(f[1]);
        if (first) {
            t.object_class = c, t.mode = m, t.lattice = f[2];
            first = false;
        } else if (c != t.object_class || m != t.mode || f[2] != t.lattice) {
            throw std::runtime_error("mixed tables in one CSV");
        }
        const int n = std::stoi(f[3]);
        t.add(n, std::stoi(f[4]), std::stoull(f[5]));
        t.n_max = std::max(t.n_max, n);
    }
    return t;
}

nlohmann::ordered_json sidecar(const CountTable& t, std::string_view tool_version) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["class"] = std::string(to_string(t.object_class));
    j["mode"] = std::string(to_string(t.mode));
    j["lattice"] = t.lattice;
    j["n_max"] = t.n_max;
    j["complete"] = t.complete;
    j["certification"] = t.certification;
    j["tool_version"] = std::string(tool_version);
    return j;
}

void apply_sidecar(CountTable& t, const nlohmann::json& j) {
    if (t.entries.empty() && t.lattice.empty()) {
        t.object_class = parse_object_class(j.at("class").get<std::string>());
        t.mode = parse_mode(j.at("mode").get<std::string>());
        t.lattice = j.at("lattice").get<std::string>();
    }
    if (j.at("class").get<std::string>() != to_string(t.object_class) || j.at("mode").get<std::string>() != to_string(t.mode) ||
        j.at("lattice").get<std::string>() != t.lattice) {
        throw std::runtime_error("sidecar does not describe this table");
    }
    t.n_max = j.at("n_max").get<int>();
    t.complete = j.at("complete").get<bool>();
    t.certification = j.value("certification", "");
}

}  // namespace percolattice
