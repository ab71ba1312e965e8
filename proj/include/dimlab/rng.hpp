#pragma once
#include <cmath>
#include <cstdint>

namespace dimlab {

// SplitMix64 (Steele/Lea/Flood 2014): 64-bit state, increment 0x9E3779B97F4A7C15,
// finalizer mixes with 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB. Chosen as the
// project-wide seeded generator so every stochastic report is bit-reproducible
// from (seed, trials) alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53-bit mantissa
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // standard normal via Box-Muller; second value cached
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = next_double(), u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    // independent per-trial substream: hash the pair (seed, index)
    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        SplitMix64 mix(seed ^ (0xD6E8FEB86659FD93ULL * (trial + 1)));
        return SplitMix64(mix.next_u64());
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace dimlab
