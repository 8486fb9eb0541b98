#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "percolattice/lattice.hpp"

namespace percolattice::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIncomplete = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string lattice = "z2";
    std::string mode = "bond";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::filesystem::path out_dir = ".";
    std::vector<int> box;
    std::vector<std::string> command_line;

    lattice::LatticeModel model() const;
    Mode parsed_mode() const;
};

// Lattice name usable in a file name (`sq*` becomes `sqstar`).
std::string file_token(const std::string& lattice);

struct EnumerateArgs {
    std::string object_class;
    int max_n = -1;
    std::uint64_t budget = 0;
    int max_parts = 3;
    std::string method = "fixed-point";
};
int cmd_enumerate(const Globals& g, const EnumerateArgs& a);

struct GrowthArgs {
    std::optional<std::filesystem::path> counts;
    std::optional<std::filesystem::path> inner;
    std::optional<double> r;
    double eps = 0.5;
    std::vector<std::string> checks;  // occurrence
    bool cheeger = false;
    bool duality = false;
    bool concavity = false;
    std::optional<int> partitions;
};
int cmd_growth(const Globals& g, const GrowthArgs& a);

struct PercolateArgs {
    std::vector<double> p;
    std::string quantity = "crossing";
    std::uint64_t samples = 0;
    int n_max = 6;
    double eps = 0.5;
};
int cmd_percolate(const Globals& g, const PercolateArgs& a);

struct VerifyArgs {
    std::string suite = "all";
    std::string inject_defect;
};
int cmd_verify(const Globals& g, const VerifyArgs& a);

}  // namespace percolattice::cli
