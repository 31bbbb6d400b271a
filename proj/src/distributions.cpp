#include "surgstat/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "surgstat/error.hpp"

namespace surgstat {

namespace {

constexpr std::array<std::string_view, 2> kShapeScale = {"shape", "scale"};
constexpr std::array<std::string_view, 2> kMuSigma2 = {"mu", "sigma2"};
constexpr std::array<std::string_view, 2> kMeanVariance = {"mean", "variance"};
constexpr std::array<std::string_view, 2> kLocationScale = {"location", "scale"};
constexpr std::array<std::string_view, 3> kLocationScaleDf = {"location", "scale", "df"};

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        fail(ErrorKind::DomainError, "probability must lie in (0, 1), got " + std::to_string(p));
    }
}

}  // namespace

std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::gamma: return "gamma";
        case Family::lognormal: return "lognormal";
        case Family::normal: return "normal";
        case Family::cauchy: return "cauchy";
        case Family::logistic: return "logistic";
        case Family::student_t: return "student_t";
        case Family::weibull: return "weibull";
    }
    return "unknown";
}

std::optional<Family> family_from_string(std::string_view s) {
    for (Family f : kAllFamilies) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

std::size_t parameter_count(Family f) noexcept { return f == Family::student_t ? 3 : 2; }

std::span<const std::string_view> parameter_names(Family f) noexcept {
    switch (f) {
        case Family::gamma:
        case Family::weibull: return kShapeScale;
        case Family::lognormal: return kMuSigma2;
        case Family::normal: return kMeanVariance;
        case Family::cauchy:
        case Family::logistic: return kLocationScale;
        case Family::student_t: return kLocationScaleDf;
    }
    return {};
}

Distribution::Distribution(Family family, std::span<const double> params)
    : family_(family), count_(parameter_count(family)) {
    if (params.size() != count_) {
        fail(ErrorKind::DomainError, std::string(to_string(family)) + " expects " +
                                         std::to_string(count_) + " parameters");
    }
    for (std::size_t i = 0; i < count_; ++i) params_[i] = params[i];

    bool ok = true;
    switch (family) {
        case Family::gamma:
        case Family::weibull: ok = positive_finite(params_[0]) && positive_finite(params_[1]); break;
        case Family::lognormal:
        case Family::normal:
        case Family::cauchy:
        case Family::logistic: ok = std::isfinite(params_[0]) && positive_finite(params_[1]); break;
        case Family::student_t:
            ok = std::isfinite(params_[0]) && positive_finite(params_[1]) && positive_finite(params_[2]);
            break;
    }
    if (!ok) fail(ErrorKind::DomainError, std::string(to_string(family)) + " parameters outside domain");
}

Distribution Distribution::gamma(double shape, double scale) {
    const std::array p{shape, scale};
    return {Family::gamma, p};
}
Distribution Distribution::lognormal(double mu, double sigma2) {
    const std::array p{mu, sigma2};
    return {Family::lognormal, p};
}
Distribution Distribution::normal(double mean, double variance) {
    const std::array p{mean, variance};
    return {Family::normal, p};
}
Distribution Distribution::cauchy(double location, double scale) {
    const std::array p{location, scale};
    return {Family::cauchy, p};
}
Distribution Distribution::logistic(double location, double scale) {
    const std::array p{location, scale};
    return {Family::logistic, p};
}
Distribution Distribution::student_t(double location, double scale, double df) {
    const std::array p{location, scale, df};
    return {Family::student_t, p};
}
Distribution Distribution::weibull(double shape, double scale) {
    const std::array p{shape, scale};
    return {Family::weibull, p};
}

double Distribution::support_lower() const noexcept {
    switch (family_) {
        case Family::gamma:
        case Family::lognormal:
        case Family::weibull: return 0.0;
        default: return -std::numeric_limits<double>::infinity();
    }
}

double Distribution::log_pdf(double x) const {
    constexpr double kLog2Pi = 1.8378770664093454836;
    constexpr double kLogPi = 1.1447298858494001741;
    const double a = params_[0];
    const double b = params_[1];
    const double ninf = -std::numeric_limits<double>::infinity();
    switch (family_) {
        case Family::gamma:
            if (!(x > 0.0)) return ninf;
            return (a - 1.0) * std::log(x) - x / b - std::lgamma(a) - a * std::log(b);
        case Family::lognormal: {
            if (!(x > 0.0)) return ninf;
            const double lx = std::log(x);
            const double d = lx - a;
            return -lx - 0.5 * (kLog2Pi + std::log(b)) - d * d / (2.0 * b);
        }
        case Family::normal: {
            const double d = x - a;
            return -0.5 * (kLog2Pi + std::log(b)) - d * d / (2.0 * b);
        }
        case Family::cauchy: {
            const double z = (x - a) / b;
            return -kLogPi - std::log(b) - std::log1p(z * z);
        }
        case Family::logistic: {
            const double z = std::abs((x - a) / b);
            return -z - std::log(b) - 2.0 * std::log1p(std::exp(-z));
        }
        case Family::student_t: {
            const double nu = params_[2];
            const double z = (x - a) / b;
            return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * (std::log(nu) + kLogPi) -
                   std::log(b) - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
        }
        case Family::weibull: {
            if (!(x > 0.0)) return ninf;
            const double z = x / b;
            return std::log(a / b) + (a - 1.0) * std::log(z) - std::pow(z, a);
        }
    }
    return ninf;
}

double Distribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double Distribution::cdf(double x) const {
    const double a = params_[0];
    const double b = params_[1];
    if (std::isnan(x)) fail(ErrorKind::DomainError, "cdf argument is NaN");
    switch (family_) {
        case Family::gamma:
            if (x <= 0.0) return 0.0;
            if (std::isinf(x)) return 1.0;
            return boost::math::gamma_p(a, x / b);
        case Family::lognormal:
            if (x <= 0.0) return 0.0;
            return normal_cdf((std::log(x) - a) / std::sqrt(b));
        case Family::normal: return normal_cdf((x - a) / std::sqrt(b));
        case Family::cauchy: return 0.5 + std::atan((x - a) / b) / std::numbers::pi;
        case Family::logistic: return 1.0 / (1.0 + std::exp(-(x - a) / b));
        case Family::student_t: {
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            boost::math::students_t_distribution<double> t(params_[2]);
            return boost::math::cdf(t, (x - a) / b);
        }
        case Family::weibull:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-std::pow(x / b, a));
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    check_probability(p);
    const double a = params_[0];
    const double b = params_[1];
    switch (family_) {
        case Family::gamma: return b * boost::math::gamma_p_inv(a, p);
        case Family::lognormal: return std::exp(a + std::sqrt(b) * normal_quantile(p));
        case Family::normal: return a + std::sqrt(b) * normal_quantile(p);
        case Family::cauchy: return a + b * std::tan(std::numbers::pi * (p - 0.5));
        case Family::logistic: return a + b * (std::log(p) - std::log1p(-p));
        case Family::student_t: {
            boost::math::students_t_distribution<double> t(params_[2]);
            return a + b * boost::math::quantile(t, p);
        }
        case Family::weibull: return b * std::pow(-std::log1p(-p), 1.0 / a);
    }
    return 0.0;
}

double Distribution::sample(Rng& rng) const {
    const double a = params_[0];
    const double b = params_[1];
    switch (family_) {
        case Family::gamma: return std::gamma_distribution<double>(a, b)(rng);
        case Family::lognormal: return std::exp(a + std::sqrt(b) * std::normal_distribution<double>()(rng));
        case Family::normal: return a + std::sqrt(b) * std::normal_distribution<double>()(rng);
        case Family::cauchy: return a + b * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
        case Family::logistic: {
            const double u = rng.uniform_open();
            return a + b * (std::log(u) - std::log1p(-u));
        }
        case Family::student_t: return a + b * std::student_t_distribution<double>(params_[2])(rng);
        case Family::weibull: return std::weibull_distribution<double>(a, b)(rng);
    }
    return 0.0;
}

double Distribution::log_likelihood(std::span<const double> data) const {
    double total = 0.0;
    for (double x : data) total += log_pdf(x);
    return total;
}

double density(Family f, std::span<const double> params, double x) {
    return Distribution(f, params).pdf(x);
}

double cdf(Family f, std::span<const double> params, double x) { return Distribution(f, params).cdf(x); }

double quantile(Family f, std::span<const double> params, double p) {
    return Distribution(f, params).quantile(p);
}

double sample(Family f, std::span<const double> params, Rng& rng) {
    return Distribution(f, params).sample(rng);
}

std::vector<double> sample_n(const Distribution& dist, std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (auto& x : out) x = dist.sample(rng);
    return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    check_probability(p);
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace surgstat
