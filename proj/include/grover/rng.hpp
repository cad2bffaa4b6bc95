#pragma once
#include <cstdint>

// Project-wide randomness. All persisted artifacts are produced from
// std::mt19937_64 streams seeded through splitmix64, so outputs are
// byte-identical for a fixed seed regardless of platform or stdlib.

#include <random>

namespace grover {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Record seeds are derived from the master seed by position, not by
// drawing from a shared stream, so records can be generated in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection on the low bits.
// std::uniform_int_distribution is implementation-defined; this is not.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;  mask |= mask >> 2;  mask |= mask >> 4;
    mask |= mask >> 8;  mask |= mask >> 16; mask |= mask >> 32;
    std::uint64_t v;
    do {
        v = rng() & mask;
    } while (v >= bound);
    return v;
}

// Uniform double in [0, 1) with 53 bits of precision.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace grover
