#pragma once

#include <cstdint>

namespace embedlab {

// Deterministic 64-bit mixing generator (splitmix-style). Produces identical
// streams on every platform, which keeps seeded runs reproducible bit-for-bit
// regardless of thread scheduling or standard-library implementation.
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

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Derives an independent stream for worker `index` of a seeded run.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
        return g.next();
    }

  private:
    std::uint64_t state_;
};

}  // namespace embedlab
