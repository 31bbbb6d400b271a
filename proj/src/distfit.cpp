#include "surgstat/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "surgstat/detail/optimize.hpp"
#include "surgstat/error.hpp"

namespace surgstat {

DurationSample::DurationSample(std::string specialty, PatientClass patient_class, std::vector<double> durations)
    : specialty_(std::move(specialty)), class_(patient_class), durations_(std::move(durations)) {
    if (durations_.empty()) fail(ErrorKind::EmptySample, "duration sample for '" + specialty_ + "' is empty");
    for (double d : durations_) {
        if (!(std::isfinite(d) && d > 0.0)) {
            fail(ErrorKind::DomainError, "durations must be positive and finite (specialty '" + specialty_ + "')");
        }
    }
}

CleanedSample clean_durations(std::string specialty, PatientClass patient_class, std::span<const double> raw) {
    CleanedSample out;
    std::vector<double> kept;
    kept.reserve(raw.size());
    for (double d : raw) {
        if (!std::isfinite(d)) {
            ++out.quality.dropped_nonfinite;
        } else if (d <= 0.0) {
            ++out.quality.dropped_nonpositive;
        } else {
            kept.push_back(d);
        }
    }
    out.quality.kept = kept.size();
    if (!kept.empty()) out.sample.emplace(std::move(specialty), patient_class, std::move(kept));
    return out;
}

LognormalParams::LognormalParams(double mu_, double sigma2_) : mu(mu_), sigma2(sigma2_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma2) || sigma2 < 0.0) {
        fail(ErrorKind::DomainError, "lognormal parameters require finite mu and sigma2 >= 0");
    }
}

Moments lognormal_moments(const LognormalParams& p) noexcept {
    const double mean = std::exp(p.mu + 0.5 * p.sigma2);
    return {mean, std::expm1(p.sigma2) * std::exp(2.0 * p.mu + p.sigma2)};
}

double aic(double log_likelihood, std::size_t k) {
    require(k >= 1, "aic needs at least one parameter");
    return 2.0 * static_cast<double>(k) - 2.0 * log_likelihood;
}

namespace {

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // divide-by-n
    double median = 0.0;
    double iqr = 0.0;
    double excess_kurtosis = 0.0;
};

double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const double> x) {
    Summary s;
    const double n = static_cast<double>(x.size());
    for (double v : x) s.mean += v;
    s.mean /= n;
    double m4 = 0.0;
    for (double v : x) {
        const double d = v - s.mean;
        s.variance += d * d;
        m4 += d * d * d * d;
    }
    s.variance /= n;
    m4 /= n;
    s.excess_kurtosis = s.variance > 0 ? m4 / (s.variance * s.variance) - 3.0 : 0.0;
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    s.median = sorted_quantile(sorted, 0.5);
    s.iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    return s;
}

FitResult finish(Family family, std::vector<double> params, std::span<const double> data, std::size_t iterations) {
    FitResult r;
    r.family = family;
    r.params = std::move(params);
    r.n = data.size();
    r.log_likelihood = Distribution(family, r.params).log_likelihood(data);
    r.aic = aic(r.log_likelihood, parameter_count(family));
    r.iterations = iterations;
    return r;
}

// Which internal coordinates are log-transformed (strictly positive params).
std::vector<bool> log_coordinates(Family f) {
    switch (f) {
        case Family::gamma:
        case Family::weibull: return {true, true};
        case Family::cauchy:
        case Family::logistic: return {false, true};
        case Family::student_t: return {false, true, true};
        default: return {false, true};
    }
}

std::vector<double> moment_start(Family f, const Summary& s) {
    const double sd = std::sqrt(s.variance);
    switch (f) {
        case Family::gamma: return {s.mean * s.mean / s.variance, s.variance / s.mean};
        case Family::weibull: {
            const double k = std::clamp(std::pow(sd / s.mean, -1.086), 0.05, 50.0);
            return {k, s.mean / std::tgamma(1.0 + 1.0 / k)};
        }
        case Family::cauchy: return {s.median, s.iqr > 0 ? 0.5 * s.iqr : sd};
        case Family::logistic: return {s.mean, sd * std::numbers::sqrt3 / std::numbers::pi};
        case Family::student_t: {
            const double df = s.excess_kurtosis > 0 ? std::max(4.0 + 6.0 / s.excess_kurtosis, 2.5) : 30.0;
            return {s.median, sd * std::sqrt((df - 2.0) / df), df};
        }
        default: return {};
    }
}

FitResult fit_iterative(Family family, std::span<const double> data, const Summary& s, const FitOptions& options) {
    const auto logs = log_coordinates(family);
    auto start = moment_start(family, s);
    const std::size_t dim = start.size();
    std::vector<double> internal(dim), steps(dim);
    const double sd = std::sqrt(s.variance);
    for (std::size_t i = 0; i < dim; ++i) {
        internal[i] = logs[i] ? std::log(start[i]) : start[i];
        steps[i] = logs[i] ? 0.2 : 0.2 * sd;
    }

    auto to_params = [&](const std::vector<double>& z) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = logs[i] ? std::exp(z[i]) : z[i];
        return p;
    };
    auto objective = [&](const std::vector<double>& z) {
        const auto p = to_params(z);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!std::isfinite(p[i]) || (logs[i] && p[i] <= 0.0)) return std::numeric_limits<double>::infinity();
        }
        return -Distribution(family, p).log_likelihood(data);
    };

    const auto result =
        detail::minimize(objective, internal, steps, options.max_iterations, options.relative_tolerance);
    if (!result.converged || !std::isfinite(result.value)) {
        fail(ErrorKind::NonConvergence, std::string(to_string(family)) + " fit did not converge after " +
                                            std::to_string(result.iterations) + " iterations");
    }
    return finish(family, to_params(result.x), data, result.iterations);
}

}  // namespace

FitResult fit_family(const DurationSample& sample, Family family, const FitOptions& options) {
    const auto data = sample.durations();
    require(data.size() >= 2, "fitting needs at least two observations");
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (*lo == *hi) {
        fail(ErrorKind::DegenerateSample, std::string(to_string(family)) + ": all observations identical in '" +
                                              sample.specialty() + "'");
    }

    if (family == Family::lognormal) {
        const auto p = fit_lognormal(sample);
        return finish(family, {p.mu, p.sigma2}, data, 0);
    }
    const Summary s = summarize(data);
    if (family == Family::normal) return finish(family, {s.mean, s.variance}, data, 0);
    return fit_iterative(family, data, s, options);
}

LognormalParams fit_lognormal(const DurationSample& sample) {
    const auto data = sample.durations();
    const double n = static_cast<double>(data.size());
    // Accumulate around the first log so that constant data gives exactly
    // that log and a zero variance.
    const double anchor = std::log(data.front());
    double shift = 0.0;
    for (double x : data) shift += std::log(x) - anchor;
    const double mu = anchor + shift / n;
    double s2 = 0.0;
    for (double x : data) {
        const double d = std::log(x) - mu;
        s2 += d * d;
    }
    return {mu, s2 / n};
}

Selection select_best(const DurationSample& sample, std::size_t min_obs, const FitOptions& options) {
    require(min_obs >= 2, "min_obs must be at least 2");
    Selection sel;
    if (sample.size() < min_obs) return sel;

    for (Family f : kAllFamilies) {
        try {
            sel.ranked.push_back(fit_family(sample, f, options));
        } catch (const Error& e) {
            sel.failures.push_back({f, e.what()});
        }
    }
    if (sel.ranked.empty()) {
        fail(ErrorKind::AllFamiliesFailed, "no family could be fitted to '" + sample.specialty() + "'");
    }
    std::stable_sort(sel.ranked.begin(), sel.ranked.end(), [](const FitResult& a, const FitResult& b) {
        if (a.aic != b.aic) return a.aic < b.aic;
        return parameter_count(a.family) < parameter_count(b.family);
    });
    sel.best = sel.ranked.front();
    return sel;
}

}  // namespace surgstat
