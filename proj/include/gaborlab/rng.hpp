#pragma once

#include <cstdint>
#include <vector>

#include "gaborlab/numerics.hpp"

namespace gaborlab {

// Counter-based splitmix64: draw k of a stream is a pure function of
// (seed, k), so fixtures are reproducible across platforms and languages.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double splitmix64_unit(std::uint64_t seed, std::uint64_t k) {
    return static_cast<double>(splitmix64_at(seed, k) >> 11) * 0x1.0p-53;
}

// Complex vector with Re and Im uniform in [-1, 1); entry i consumes draws
// 2i and 2i+1.
inline std::vector<Complex> random_complex_values(std::uint64_t seed, std::size_t n) {
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = 2.0 * splitmix64_unit(seed, 2 * i) - 1.0;
        const double im = 2.0 * splitmix64_unit(seed, 2 * i + 1) - 1.0;
        out[i] = Complex{re, im};
    }
    return out;
}

} // namespace gaborlab
