#pragma once

#include <cmath>
#include <cstdint>

namespace ldtk {

// Counter-based random source. Every draw is a pure function of
// (seed, index, lane): the 64-bit counter seed ^ h(index, lane) is pushed
// through the SplitMix64 finalizer. Stream-splitting rule: sample index i of
// an experiment owns lanes (i, 0), (i, 1), ...; independent workers may
// therefore consume disjoint index ranges without coordination, and the same
// (seed, index, lane) triple yields the same bits on every run.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t index, std::uint64_t lane) {
    std::uint64_t counter = mix64(index * 0x2545F4914F6CDD1Dull + lane);
    return mix64(seed ^ counter);
}

// Uniform in the open interval (0,1); never returns an exact endpoint.
inline double unit_double(std::uint64_t seed, std::uint64_t index, std::uint64_t lane) {
    std::uint64_t bits = draw_bits(seed, index, lane);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller on lanes (lane, lane+1).
inline double normal_draw(std::uint64_t seed, std::uint64_t index, std::uint64_t lane = 0) {
    double u1 = unit_double(seed, index, lane);
    double u2 = unit_double(seed, index, lane + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace ldtk
