#pragma once

#include <cstdint>

namespace mpt {

/// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
/// needed so that outputs are bit-reproducible across platforms; the std::
/// distributions are implementation-defined and would break that.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// +1 or -1 with equal probability.
    int next_sign() { return (next_u64() & 1u) ? 1 : -1; }

  private:
    std::uint64_t state_;
};

/// Deterministic seed splitting: independent streams for (seed, index) pairs
/// regardless of evaluation order or parallelism.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    g.next_u64();
    return g.next_u64();
}

} // namespace mpt
