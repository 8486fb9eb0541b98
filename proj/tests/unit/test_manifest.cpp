#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "manifest.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const char* name) {
    const auto dir = fs::temp_directory_path() / "percolattice_unit";
    fs::create_directories(dir);
    return dir / name;
}

TEST(Manifest, Sha256OfKnownContent) {
    const auto p = scratch("abc.txt");
    std::ofstream(p) << "abc";
    EXPECT_EQ(percolattice::cli::sha256_file(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, RecordsOutputsAndParameters) {
    const auto out = scratch("table.csv");
    std::ofstream(out) << "abc";
    percolattice::cli::RunManifest m({"percolattice", "enumerate"}, "z2", "bond", 42);
    m.parameters()["max_n"] = 6;
    m.add_output(out);
    const auto path = scratch("table.manifest.json");
    m.write(path);
    const auto j = nlohmann::json::parse(std::ifstream(path));
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["parameters"]["max_n"], 6);
    ASSERT_EQ(j["outputs"].size(), 1u);
    EXPECT_EQ(j["outputs"][0]["sha256"], "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(j["command_line"][1], "enumerate");
}

}  // namespace
