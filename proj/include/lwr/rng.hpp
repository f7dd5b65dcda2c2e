#pragma once

#include <cstdint>
#include <span>

namespace lwr {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based generator: one word per (seed, stream, counter) key, so draws
// are identical under any evaluation order or thread count. Streams are agent
// indices; kTrueStateStream is reserved for drawing the true state. The
// construction is fixed: changing it changes every logged signal.
inline constexpr std::uint64_t kTrueStateStream = 0x8000000000000000ULL;

constexpr std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (stream + 0x9E3779B97F4A7C15ULL));
    h = mix64(h ^ (counter + 0xC2B2AE3D27D4EB4FULL));
    return h;
}

// Uniform in [0, 1) with 53 random bits.
constexpr double keyed_uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(keyed_bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw over an index-ordered categorical row. Zero-probability
// entries are never returned; the last positive bucket absorbs cumulative
// rounding at the top. Returns -1 for an all-zero row.
inline int sample_categorical(std::span<const double> probs, double u) {
    double cum = 0.0;
    int last_positive = -1;
    for (int s = 0; s < static_cast<int>(probs.size()); ++s) {
        const double p = probs[static_cast<std::size_t>(s)];
        if (p <= 0.0) continue;
        last_positive = s;
        cum += p;
        if (u < cum) return s;
    }
    return last_positive;
}

}  // namespace lwr
