#include "manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "percolattice/version.hpp"

namespace percolattice::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
    std::array<char, 1 << 16> buf;
    while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md;
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    std::string hex;
    for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

RunManifest::RunManifest(std::vector<std::string> command_line, std::string lattice, std::string mode,
                         std::uint64_t seed)
    : command_line_(std::move(command_line)),
      lattice_(std::move(lattice)),
      mode_(std::move(mode)),
      seed_(seed),
      started_(std::chrono::system_clock::now()) {}

void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

void RunManifest::write(const std::filesystem::path& path) const {
    const auto stamp = [](std::chrono::system_clock::time_point t) {
        return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(t)));
    };
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command_line"] = command_line_;
    j["lattice"] = lattice_;
    j["mode"] = mode_;
    j["parameters"] = parameters_;
    j["seed"] = seed_;
    j["tool_version"] = std::string(kVersion);
    j["started_at"] = stamp(started_);
    j["finished_at"] = stamp(std::chrono::system_clock::now());
    auto& outs = j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& p : outputs_) outs.push_back({{"path", p.filename().string()}, {"sha256", sha256_file(p)}});
    std::ofstream(path) << j.dump(2) << '\n';
}

}  // namespace percolattice::cli
