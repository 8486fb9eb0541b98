#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace percolattice {

inline constexpr int kReportSchemaVersion = 1;

// Envelope shared by every machine-checked report.
struct CheckReport {
    std::string check;
    std::string lattice;
    std::string mode;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    bool pass = true;
    nlohmann::ordered_json details = nlohmann::ordered_json::array();

    void fail_with(nlohmann::ordered_json detail) {
        pass = false;
        details.push_back(std::move(detail));
    }
};

inline nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["check"] = r.check;
    j["lattice"] = r.lattice;
    j["mode"] = r.mode;
    j["params"] = r.params;
    j["pass"] = r.pass;
    j["details"] = r.details;
    return j;
}

}  // namespace percolattice
