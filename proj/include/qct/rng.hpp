#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qct {

// SplitMix64 finalizer. Used to derive per-trial seeds so a batch of trials
// is reproducible no matter how it is scheduled across threads.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// trial_seed(master, i) is the i-th output of a SplitMix64 stream seeded
// with `master`. Pinned here and in the README; changing it breaks report
// reproducibility.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + trial_index * 0x9e3779b97f4a7c15ULL);
}

// Deterministic pseudo-random generator. Same seed, same stream. All draws
// used by the simulation go through this wrapper; the raw engine is never
// exposed so the draw sequence stays pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    int bit() { return static_cast<int>(next_u64() >> 63); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint32_t below(std::uint32_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<std::uint32_t>(v % n);
    }

    // Standard normal via Box-Muller. Draws two uniforms per call so the
    // stream layout does not depend on call parity.
    double gaussian() {
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qct
