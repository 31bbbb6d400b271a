#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace surgstat {

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::string notes;
    double degrees_of_freedom = 0.0;  // chi-square and t tests only
    bool simulated = false;           // Monte Carlo p-value
    std::size_t replicates = 0;       // when simulated
};

/// Shapiro-Wilk W with Royston's (1995) coefficients and normalising
/// transform. Valid for 3 <= n <= 5000.
TestReport shapiro_wilk(std::span<const double> data);

/// Composite-normality Anderson-Darling A^2 (mean and variance estimated),
/// with the Stephens small-sample adjustment and D'Agostino-Stephens p-value.
/// Needs n >= 8.
TestReport anderson_darling_normal(std::span<const double> data);

/// Lilliefors (Kolmogorov-Smirnov with estimated mean and variance); p-value
/// from the Dallal-Wilkinson approximation with Stephens' modified statistic
/// above 0.1. Needs n >= 8.
TestReport lilliefors(std::span<const double> data);

/// Shapiro-Wilk when 3 <= n <= 5000, Anderson-Darling beyond 5000.
TestReport normality_test(std::span<const double> data);

/// Observed counts per day group with the expected share of each group.
struct DayCounts {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> counts;
    std::vector<double> expected_weights;

    /// Validates equal lengths >= 2, positive weights summing to 1.
    void validate() const;

    /// Seven groups Mon..Sun, equal weights.
    static DayCounts all_days(const std::array<std::uint64_t, 7>& by_day);
    /// Sat+Sun+Mon pooled (weight 3/7) and Tue..Fri (1/7 each).
    static DayCounts pooled_weekend_monday(const std::array<std::uint64_t, 7>& by_day);
    /// Tue..Fri only, equal weights.
    static DayCounts tuesday_to_friday(const std::array<std::uint64_t, 7>& by_day);
};

/// Pearson chi-square against the expected weights with groups-1 degrees of
/// freedom. ExpectedCountTooSmall if any expected count is below 1; a note is
/// added when any is below 5.
TestReport chi_square_uniformity(const DayCounts& counts);

struct ExactMultinomialOptions {
    double max_enumeration = 1e7;  // compositions enumerated exactly up to this many
    std::size_t mc_replicates = 100000;
    std::uint64_t seed = 0;
};

/// Exact multinomial goodness-of-fit: the p-value sums the probability of
/// every outcome no more likely than the observed one. Falls back to a seeded
/// Monte Carlo estimate (count+1)/(reps+1) when the outcome space is too large.
TestReport exact_multinomial(std::span<const std::uint64_t> counts, std::span<const double> probs,
                             const ExactMultinomialOptions& options = {});

/// Number of outcomes (compositions of n into k parts), as a double.
double multinomial_outcome_count(std::uint64_t n, std::size_t k);

/// Poisson goodness of fit for per-period counts: bins 0..bins-2 and a tail
/// bin, probabilities from a Poisson with the sample-mean rate, then
/// exact_multinomial on the bin frequencies.
TestReport poisson_exact_test(std::span<const std::uint64_t> observations, std::size_t bins = 4,
                              const ExactMultinomialOptions& options = {});

/// Welch two-sample t-test, two-sided. When both samples are constant the
/// p-value is 1 for equal means and 0 otherwise (noted in the report).
TestReport two_sample_t(std::span<const double> a, std::span<const double> b);

}  // namespace surgstat
