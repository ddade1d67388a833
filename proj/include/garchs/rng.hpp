#pragma once

#include <cmath>
#include <cstdint>

namespace garchs {

/// splitmix64 generator with a polar-method normal sampler. The algorithm
/// identity is pinned (see SimConfig) so seeded runs are stable across
/// machines and builds. One raw draw is consumed at construction to
/// decorrelate small consecutive seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) { next(); }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal by the polar method; the spare value is cached.
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        while (true) {
            const double x = 2.0 * uniform() - 1.0;
            const double y = 2.0 * uniform() - 1.0;
            const double r2 = x * x + y * y;
            if (r2 > 0.0 && r2 < 1.0) {
                const double f = std::sqrt(-2.0 * std::log(r2) / r2);
                cache_ = y * f;
                have_cache_ = true;
                return x * f;
            }
        }
    }

private:
    std::uint64_t state_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

} // namespace garchs
