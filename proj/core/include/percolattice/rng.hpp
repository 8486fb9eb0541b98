#pragma once

#include <cstdint>

namespace percolattice::rng {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based: the value depends on (seed, sample, index) only, never on call order.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t sample, std::uint64_t index) {
    std::uint64_t x = mix64(seed + 0x9e3779b97f4a7c15ULL * (sample + 1));
    return mix64(x ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

// h < threshold with probability p, exact to 2^-64.
class Bernoulli {
public:
    explicit Bernoulli(double p)
        : always_(p >= 1), threshold_(p <= 0 || p >= 1 ? 0 : static_cast<std::uint64_t>(p * 18446744073709551616.0L)) {}
    bool operator()(std::uint64_t h) const { return always_ || h < threshold_; }

private:
    bool always_;
    std::uint64_t threshold_;
};

}  // namespace percolattice::rng
