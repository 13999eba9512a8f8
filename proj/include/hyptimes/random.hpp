#pragma once

#include <cstdint>

namespace hyptimes {

/// splitmix64 finalizer. Used to derive per-seed streams from a master seed so that seed
/// streams are identical on every platform.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`: mix64(master + (index + 1) * golden gamma).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// splitmix64 generator. Satisfies UniformRandomBitGenerator, but the helpers below are
/// preferred over <random> distributions, whose output is implementation-defined.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type(0); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] (inclusive); modulo bias is below 2^-40 for the ranges used.
    constexpr std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
        return lo + (*this)() % (hi - lo + 1);
    }

    constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::uint64_t state_;
};

} // namespace hyptimes
