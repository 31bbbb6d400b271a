#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surgstat/common.hpp"
#include "surgstat/distributions.hpp"

namespace surgstat {

/// Observed surgical durations (hours) for one specialty and patient class.
/// Every duration is strictly positive and finite and there is at least one.
class DurationSample {
public:
    DurationSample(std::string specialty, PatientClass patient_class, std::vector<double> durations);

    const std::string& specialty() const noexcept { return specialty_; }
    PatientClass patient_class() const noexcept { return class_; }
    std::span<const double> durations() const noexcept { return durations_; }
    std::size_t size() const noexcept { return durations_.size(); }

private:
    std::string specialty_;
    PatientClass class_;
    std::vector<double> durations_;
};

struct DataQuality {
    std::size_t kept = 0;
    std::size_t dropped_nonpositive = 0;
    std::size_t dropped_nonfinite = 0;
};

struct CleanedSample {
    std::optional<DurationSample> sample;  // absent when nothing survived
    DataQuality quality;
};

/// Drops nonpositive and nonfinite durations, counting each.
CleanedSample clean_durations(std::string specialty, PatientClass patient_class,
                              std::span<const double> raw);

/// Lognormal parameters as tabulated: mean and variance of log-hours.
struct LognormalParams {
    double mu = 0.0;
    double sigma2 = 0.0;

    LognormalParams() = default;
    LognormalParams(double mu, double sigma2);

    bool degenerate() const noexcept { return sigma2 == 0.0; }
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments lognormal_moments(const LognormalParams& params) noexcept;

double aic(double log_likelihood, std::size_t k);

struct FitResult {
    Family family = Family::lognormal;
    std::vector<double> params;
    double log_likelihood = 0.0;
    double aic = 0.0;
    std::size_t n = 0;
    std::size_t iterations = 0;  // 0 for closed-form fits

    Distribution distribution() const { return {family, params}; }
};

struct FitOptions {
    std::size_t max_iterations = 20000;
    /// Simplex stops once the spread of log-likelihoods across its vertices
    /// falls below this fraction of the best value.
    double relative_tolerance = 1e-10;
};

/// Maximum-likelihood fit. Normal and lognormal use closed forms (sample mean
/// and divide-by-n variance of the data or the log-data); the other families
/// use a Nelder-Mead search from method-of-moments starting values followed
/// by a compass-search polish. Throws DegenerateSample for constant data and
/// NonConvergence if the iteration cap is reached.
FitResult fit_family(const DurationSample& sample, Family family, const FitOptions& options = {});

struct FitFailure {
    Family family;
    std::string reason;
};

struct Selection {
    std::optional<FitResult> best;
    std::vector<FitResult> ranked;  // ascending AIC
    std::vector<FitFailure> failures;
};

inline constexpr std::size_t kDefaultMinObs = 25;

/// Fits every family and picks the minimum-AIC one. Samples smaller than
/// `min_obs` yield an empty selection. Ties are broken by fewer parameters
/// and then by enumeration order.
Selection select_best(const DurationSample& sample, std::size_t min_obs = kDefaultMinObs,
                      const FitOptions& options = {});

/// Closed-form lognormal MLE packaged as tabulated parameters.
LognormalParams fit_lognormal(const DurationSample& sample);

}  // namespace surgstat
