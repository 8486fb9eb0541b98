#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace percolattice::cli {

std::string sha256_file(const std::filesystem::path& path);

// Pairs every output file with the exact invocation that produced it.
class RunManifest {
public:
    RunManifest(std::vector<std::string> command_line, std::string lattice, std::string mode, std::uint64_t seed);

    nlohmann::ordered_json& parameters() { return parameters_; }
    void add_output(const std::filesystem::path& path);
    // Writes <path>, recording digests of every output added so far.
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> command_line_;
    std::string lattice_, mode_;
    std::uint64_t seed_;
    nlohmann::ordered_json parameters_ = nlohmann::ordered_json::object();
    std::vector<std::filesystem::path> outputs_;
    std::chrono::system_clock::time_point started_;
};

}  // namespace percolattice::cli
