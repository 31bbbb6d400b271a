#include "surgstat/resample.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "surgstat/detail/parallel.hpp"
#include "surgstat/error.hpp"
#include "surgstat/rng.hpp"

namespace surgstat {

namespace {

void check_q(double q) { require(q > 0.0 && q < 1.0, "quantile level must lie in (0, 1)"); }

// Adds one resampled duration to every replicate's running sum.
void add_draw(std::span<const double> sample, std::vector<Rng>& streams, std::vector<double>& sums,
              Parallelism par) {
    const std::uint64_t m = sample.size();
    detail::parallel_for(sums.size(), par.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) sums[r] += sample[streams[r].below(m)];
    });
}

std::vector<Rng> make_streams(std::uint64_t seed, std::size_t replicates) {
    std::vector<Rng> streams;
    streams.reserve(replicates);
    for (std::size_t r = 0; r < replicates; ++r) streams.push_back(Rng::substream(seed, r));
    return streams;
}

double sums_quantile(const std::vector<double>& sums, double q) {
    std::vector<double> sorted = sums;
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, q);
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double q) {
    require(!sorted.empty(), "quantile of an empty sequence");
    require(q >= 0.0 && q <= 1.0, "quantile level must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double bootstrap_percentile(std::span<const double> sample, std::size_t n_patients, double q,
                            std::size_t replicates, std::uint64_t seed, Parallelism par) {
    if (sample.empty()) fail(ErrorKind::EmptySample, "bootstrap needs a nonempty sample");
    require(n_patients >= 1, "bootstrap needs at least one patient");
    require(replicates >= 1, "bootstrap needs at least one replicate");
    check_q(q);
    auto streams = make_streams(seed, replicates);
    std::vector<double> sums(replicates, 0.0);
    for (std::size_t i = 0; i < n_patients; ++i) add_draw(sample, streams, sums, par);
    return sums_quantile(sums, q);
}

double lognormal_sum_percentile(const LognormalParams& params, std::size_t n_patients, double q) {
    require(n_patients >= 1, "lognormal sum needs at least one patient");
    check_q(q);
    const double n = static_cast<double>(n_patients);
    if (params.degenerate()) return n * std::exp(params.mu);
    // Moment matching: the sum has mean n*m and variance n*v; for a lognormal
    // with those moments, sigma_s^2 = log(1 + v/(n m^2)) and
    // mu_s = log(n m) - sigma_s^2/2, where v/m^2 = expm1(sigma^2).
    const double s2 = std::log1p(std::expm1(params.sigma2) / n);
    const double mu = params.mu + 0.5 * params.sigma2 + std::log(n) - 0.5 * s2;
    return std::exp(mu + std::sqrt(s2) * normal_quantile(q));
}

std::string_view to_string(CapacityMethod m) noexcept {
    return m == CapacityMethod::bootstrap ? "bootstrap" : "lognormal_approx";
}

std::vector<double> synthetic_durations(const LognormalParams& params, std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    const double sd = std::sqrt(params.sigma2);
    std::vector<double> out(size);
    std::normal_distribution<double> z;
    for (auto& x : out) x = std::exp(params.mu + sd * z(rng));
    return out;
}

CapacityResult max_patients(const CapacitySource& source, double block_hours, CapacityMethod method,
                            const CapacityOptions& options, std::string specialty) {
    require(block_hours > 0.0 && std::isfinite(block_hours), "block hours must be positive");
    require(options.alpha > 0.0 && options.alpha < 1.0, "alpha must lie in (0, 1)");
    const double q = 1.0 - options.alpha;

    CapacityResult result;
    result.specialty = std::move(specialty);
    if (result.specialty.empty()) {
        if (const auto* s = std::get_if<DurationSample>(&source)) result.specialty = s->specialty();
    }
    result.block_hours = block_hours;
    result.method = method;
    result.seed = options.seed;

    if (method == CapacityMethod::lognormal_approx) {
        const LognormalParams params = std::holds_alternative<LognormalParams>(source)
                                           ? std::get<LognormalParams>(source)
                                           : fit_lognormal(std::get<DurationSample>(source));
        std::size_t n = 0;
        double at_max = 0.0;
        for (;;) {
            const double next = lognormal_sum_percentile(params, n + 1, q);
            if (!(next <= block_hours)) break;
            at_max = next;
            ++n;
        }
        result.max_patients = n;
        result.percentile_at_max = at_max;
        return result;
    }

    require(options.replicates >= 1, "bootstrap needs at least one replicate");
    std::vector<double> synthetic;
    std::span<const double> sample;
    if (const auto* s = std::get_if<DurationSample>(&source)) {
        sample = s->durations();
    } else {
        require(options.synthetic_sample_size >= 1, "synthetic sample size must be positive");
        synthetic = synthetic_durations(std::get<LognormalParams>(source), options.synthetic_sample_size,
                                        splitmix64_mix(options.seed ^ 0x5eed5a3b1e0fULL));
        sample = synthetic;
    }

    // Extending every replicate by one draw reproduces bootstrap_percentile
    // for the next n exactly, so the search costs one pass per patient.
    auto streams = make_streams(options.seed, options.replicates);
    std::vector<double> sums(options.replicates, 0.0);
    std::size_t n = 0;
    double at_max = 0.0;
    for (;;) {
        add_draw(sample, streams, sums, options.parallelism);
        const double next = sums_quantile(sums, q);
        if (!(next <= block_hours)) break;
        at_max = next;
        ++n;
    }
    result.max_patients = n;
    result.percentile_at_max = at_max;
    result.replicates = options.replicates;
    return result;
}

}  // namespace surgstat
