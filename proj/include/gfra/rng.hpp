#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace gfra {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; full-avalanche 64-bit mixing.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Derives the seed of an independent sub-stream from (master seed, stream
/// name, index). Streams with different names or indices are decorrelated by
/// two rounds of mixing; the same triple always yields the same seed.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::string_view name,
                                    std::uint64_t index = 0) {
    return mix64(mix64(master ^ fnv1a(name)) ^ index);
}

inline Rng make_stream(std::uint64_t master, std::string_view name, std::uint64_t index = 0) {
    return Rng(stream_seed(master, name, index));
}

/// One CN(0,1) draw: real and imaginary parts i.i.d. N(0, 1/2).
inline std::complex<double> complex_normal(Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

/// Uniform draw in [0, 1).
inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gfra
