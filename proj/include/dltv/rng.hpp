#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dltv {

using Rng = std::mt19937_64;

/// Uniform double in the open interval (0,1). One generator draw per call,
/// so sequences are exactly reproducible from the seed alone.
inline double uniform01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline int uniform_index(Rng& rng, int n) {
    int i = static_cast<int>(uniform01(rng) * n);
    return i < n ? i : n - 1;
}

/// Standard normal via Box-Muller. Two draws per call, no retained state.
inline double normal01(Rng& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Decorrelated seed for a named substream of a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

}  // namespace dltv
