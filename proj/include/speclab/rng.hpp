#pragma once

#include <cstdint>

namespace speclab {

// SplitMix64 finalizer. Full-avalanche 64-bit mix, used both as a stream
// step and as a hash of (key, counter) pairs.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline constexpr double to_unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based generator keyed by (seed, index). Every matrix entry gets its
// own index, so the upper triangle can be filled in any order, or in
// parallel, and still come out bit-identical for a given seed.
class EntryRng {
  public:
    explicit EntryRng(std::uint64_t seed) noexcept
        : key_(splitmix64(seed ^ 0x8FB3'DE1C'9A67'2B45ull)) {}

    std::uint64_t bits(std::uint64_t index) const noexcept {
        return splitmix64(key_ ^ index);
    }
    // Second independent stream at the same index.
    std::uint64_t bits2(std::uint64_t index) const noexcept {
        return splitmix64(bits(index) ^ 0xDA94'2042'E4DD'58B5ull);
    }
    double uniform(std::uint64_t index) const noexcept { return to_unit_double(bits(index)); }
    double uniform2(std::uint64_t index) const noexcept { return to_unit_double(bits2(index)); }

  private:
    std::uint64_t key_;
};

// Root-seed fan-out for Monte Carlo trials: trial k of a run always sees the
// same derived seed no matter how trials are scheduled.
inline constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(root) + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Small sequential stream for places that want a plain generator.
class SequentialRng {
  public:
    explicit SequentialRng(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {}
    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64(state_);
    }
    double uniform() noexcept { return to_unit_double(next()); }
    // uniform in [lo, hi)
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

}  // namespace speclab
