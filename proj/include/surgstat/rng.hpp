#pragma once

#include <cstdint>
#include <limits>

namespace surgstat {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Cheap to seed, so every Monte Carlo replicate gets
/// its own stream; results never depend on how replicates are partitioned
/// across threads.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

    /// Independent stream number `index` derived from `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return Rng(splitmix64_mix(splitmix64_mix(seed) ^ splitmix64_mix(index + 0x632be59bd9b4e019ULL)));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound) noexcept {
        __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<__uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::uint64_t state_;
};

/// Seed drawn from the OS entropy source, used when the caller gives none.
std::uint64_t entropy_seed();

}  // namespace surgstat
