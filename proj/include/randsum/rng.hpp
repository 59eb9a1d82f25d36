#pragma once

#include <cmath>
#include <cstdint>

#include "randsum/numeric.hpp"

namespace randsum {

// SplitMix64.  Small state, full 64-bit avalanche per draw, and cheap to
// seed, which is what the per-trial substream scheme needs.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on (0, 1]
    double next_unit_positive() { return ((next() >> 11) + 1) * 0x1.0p-53; }
    // uniform on [0, 1)
    double next_unit() { return (next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of the counter-derived substream for one trial.  Each trial's stream
// is a pure function of (seed, trial), so any execution order or degree of
// parallelism reproduces the serial result.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (trial + 1));
}

// Exact N(0,1) draws by Box-Muller on SplitMix64 uniforms.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = rng_.next_unit_positive();
        const double u2 = rng_.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    SplitMix64 rng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace randsum
