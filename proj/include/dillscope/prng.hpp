#pragma once

#include <cstdint>

namespace dillscope {

// splitmix64: tiny deterministic generator for the reproduction suite and
// tests. std::uniform_int_distribution is implementation-defined, so raw
// modulo keeps artifacts byte-identical everywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform-ish in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace dillscope
