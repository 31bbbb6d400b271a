#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "surgstat/distfit.hpp"

namespace surgstat {

inline constexpr std::size_t kDefaultReplicates = 10000;
inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kHalfDayHours = 4.0;
inline constexpr double kFullDayHours = 8.0;
/// Size of the synthetic sample drawn when bootstrapping from parameters.
inline constexpr std::size_t kSyntheticSampleSize = 10000;

/// Linear-interpolation quantile of sorted data (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> sorted, double q);

/// Parallelism knob for Monte Carlo routines. Results never depend on it.
struct Parallelism {
    unsigned workers = 1;  // 0 selects the hardware concurrency
};

/// Resamples `n_patients` durations with replacement, sums them, repeats
/// `replicates` times and returns the q-quantile of the sums. Replicate r
/// draws from its own stream derived from (seed, r), so the result is
/// nondecreasing in n_patients and in q for a fixed seed.
double bootstrap_percentile(std::span<const double> sample, std::size_t n_patients, double q,
                            std::size_t replicates, std::uint64_t seed, Parallelism par = {});

inline double bootstrap_percentile(const DurationSample& sample, std::size_t n_patients, double q,
                                   std::size_t replicates, std::uint64_t seed, Parallelism par = {}) {
    return bootstrap_percentile(sample.durations(), n_patients, q, replicates, seed, par);
}

/// q-quantile of the sum of n i.i.d. lognormals, approximated by a single
/// lognormal with matching mean and variance. With sigma2 = 0 the sum is the
/// constant n*exp(mu).
double lognormal_sum_percentile(const LognormalParams& params, std::size_t n_patients, double q);

enum class CapacityMethod { bootstrap, lognormal_approx };

std::string_view to_string(CapacityMethod m) noexcept;

struct CapacityResult {
    std::string specialty;
    double block_hours = 0.0;
    CapacityMethod method = CapacityMethod::bootstrap;
    std::size_t max_patients = 0;
    double percentile_at_max = 0.0;  // 0 when max_patients is 0
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
};

using CapacitySource = std::variant<DurationSample, LognormalParams>;

struct CapacityOptions {
    double alpha = kDefaultAlpha;
    std::size_t replicates = kDefaultReplicates;
    std::uint64_t seed = 0;
    std::size_t synthetic_sample_size = kSyntheticSampleSize;
    Parallelism parallelism;
};

/// Largest n with the (1-alpha)-percentile of total duration at most
/// block_hours. A lognormal source is bootstrapped from a synthetic sample of
/// `synthetic_sample_size` draws; a sample source is reduced to its
/// closed-form lognormal fit for the approximation.
CapacityResult max_patients(const CapacitySource& source, double block_hours, CapacityMethod method,
                            const CapacityOptions& options = {}, std::string specialty = "");

/// Draws the synthetic sample used when bootstrapping from parameters.
std::vector<double> synthetic_durations(const LognormalParams& params, std::size_t size, std::uint64_t seed);

}  // namespace surgstat
