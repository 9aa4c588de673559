#pragma once

#include <cstdint>

namespace hebbocr {

/// splitmix64 (Steele, Lea, Flood / Vigna). Pinned here so every dataset a
/// given seed produces is reproducible byte for byte across platforms.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    double next_unit() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform integer in [lo, hi] by modulo reduction (spans here are a
    /// handful of cells, so the bias is immaterial and determinism wins).
    std::int64_t next_in_range(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(next() % span);
    }
};

} // namespace hebbocr
