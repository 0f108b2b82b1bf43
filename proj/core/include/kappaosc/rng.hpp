#pragma once

#include <cstdint>

#include "kappaosc/vec3.hpp"

namespace kappaosc {

/// Seeded 64-bit generator with a splitmix-style update rule, written out so any
/// implementation can reproduce identical draws:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to [0, 1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// componentwise uniform in [-amp, amp)
    Vec3 vec3(double amp) {
        return {uniform(-amp, amp), uniform(-amp, amp), uniform(-amp, amp)};
    }

private:
    std::uint64_t state_;
};

}  // namespace kappaosc
