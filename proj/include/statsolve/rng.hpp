#pragma once

#include <cstdint>

#include "statsolve/rational.hpp"

namespace statsolve {

// SplitMix64 (Steele, Lea & Flood's mixer) is the pinned pseudo-random
// generator for every randomized component. It is platform stable: the output
// stream depends only on 64-bit integer arithmetic, never on libc or
// std::random distributions.
//
// Stream splitting convention used throughout:
//   substream_seed(seed, i) seeds an independent generator for logical
//   stream i (a trial index, a draw index, a generator stage, ...).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + kGolden64 * (index + 1));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += kGolden64);
        return mix64(z);
    }

    // Unbiased integer in [0, n) via Lemire's multiply-with-rejection.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;  // 2^64 mod n
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Bernoulli(p) for rational p in [0, 1]; exact up to the 2^-64 grid.
    bool bernoulli(const Rational& p) {
        const std::uint64_t u = next();
        const auto a = static_cast<unsigned __int128>(p.num());
        const auto b = static_cast<unsigned __int128>(p.den());
        return static_cast<unsigned __int128>(u) * b < (a << 64);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace statsolve
