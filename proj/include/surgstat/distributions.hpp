#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "surgstat/rng.hpp"

namespace surgstat {

enum class Family { gamma, lognormal, normal, cauchy, logistic, student_t, weibull };

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::gamma,    Family::lognormal, Family::normal, Family::cauchy,
    Family::logistic, Family::student_t, Family::weibull};

std::string_view to_string(Family f) noexcept;
std::optional<Family> family_from_string(std::string_view s);

std::size_t parameter_count(Family f) noexcept;

// Parameter order per family:
//   gamma      (shape, scale)
//   lognormal  (mu, sigma2)            mean and variance of log-hours
//   normal     (mean, variance)
//   cauchy     (location, scale)
//   logistic   (location, scale)
//   student_t  (location, scale, df)
//   weibull    (shape, scale)
std::span<const std::string_view> parameter_names(Family f) noexcept;

/// A member of one of the candidate families with validated parameters.
class Distribution {
public:
    /// Throws DomainError when `params` has the wrong arity or leaves the
    /// family's domain (every scale, shape, variance and df strictly positive).
    Distribution(Family family, std::span<const double> params);

    static Distribution gamma(double shape, double scale);
    static Distribution lognormal(double mu, double sigma2);
    static Distribution normal(double mean, double variance);
    static Distribution cauchy(double location, double scale);
    static Distribution logistic(double location, double scale);
    static Distribution student_t(double location, double scale, double df);
    static Distribution weibull(double shape, double scale);

    Family family() const noexcept { return family_; }
    std::span<const double> params() const noexcept { return {params_.data(), count_}; }

    /// Support lower bound: 0 for positive families, -inf otherwise.
    double support_lower() const noexcept;

    double log_pdf(double x) const;
    double pdf(double x) const;
    double cdf(double x) const;
    /// Inverse cdf; DomainError unless 0 < p < 1.
    double quantile(double p) const;
    double sample(Rng& rng) const;

    /// Sum of log densities; -inf if any point lies outside the support.
    double log_likelihood(std::span<const double> data) const;

private:
    Family family_;
    std::array<double, 3> params_{};
    std::size_t count_ = 0;
};

/// Free-function forms of the distribution plumbing.
double density(Family f, std::span<const double> params, double x);
double cdf(Family f, std::span<const double> params, double x);
double quantile(Family f, std::span<const double> params, double p);
double sample(Family f, std::span<const double> params, Rng& rng);
std::vector<double> sample_n(const Distribution& dist, std::size_t n, Rng& rng);

/// Standard normal helpers used throughout the library.
double normal_cdf(double z);
double normal_sf(double z);
double normal_quantile(double p);

}  // namespace surgstat
