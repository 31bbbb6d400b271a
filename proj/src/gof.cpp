#include "surgstat/gof.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "surgstat/distributions.hpp"
#include "surgstat/error.hpp"
#include "surgstat/rng.hpp"

namespace surgstat {

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

double poly(std::span<const double> c, double x) {
    double result = c[0];
    if (c.size() > 1) {
        double p = x * c[c.size() - 1];
        for (std::size_t j = c.size() - 2; j > 0; --j) p = (p + c[j]) * x;
        result += p;
    }
    return result;
}

struct MeanSd {
    double mean;
    double sd;  // divide by n-1
};

MeanSd mean_sd(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::vector<double> standardized_sorted(std::span<const double> data, const char* test) {
    const auto [mean, sd] = mean_sd(data);
    if (!(sd > 0.0)) fail(ErrorKind::ZeroVariance, std::string(test) + ": sample has zero variance");
    std::vector<double> z(data.begin(), data.end());
    std::sort(z.begin(), z.end());
    for (auto& v : z) v = (v - mean) / sd;
    return z;
}

}  // namespace

TestReport shapiro_wilk(std::span<const double> data) {
    static constexpr double g[] = {-2.273, 0.459};
    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    const std::size_t n = data.size();
    if (n < 3 || n > 5000) {
        fail(ErrorKind::SampleSizeOutOfRange, "shapiro_wilk needs 3 <= n <= 5000, got " + std::to_string(n));
    }
    std::vector<double> x(data.begin(), data.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 0.0)) fail(ErrorKind::ZeroVariance, "shapiro_wilk: sample has zero range");

    const std::size_t half = n / 2;
    const double an = static_cast<double>(n);
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        const double an25 = an + 0.25;
        double summ2 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            a[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / an25);
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, rsn) - a[0] / ssumm2;
        std::size_t first_scaled;
        double fac;
        if (n > 5) {
            first_scaled = 2;
            const double a2 = -a[1] / ssumm2 + poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            first_scaled = 1;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (std::size_t i = first_scaled; i < half; ++i) a[i] /= -fac;
    }

    // W as the squared correlation between the ordered data and the
    // antisymmetric coefficient vector; 1-W is formed directly to keep
    // precision when W is close to 1.
    auto coefficient = [&](std::size_t i) {
        const std::size_t mirror = n - 1 - i;
        if (i < mirror) return -a[i];
        if (i > mirror) return a[mirror];
        return 0.0;
    };
    double sa = 0.0;
    double sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += coefficient(i);
        sx += x[i] / range;
    }
    sa /= an;
    sx /= an;
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double asa = coefficient(i) - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    TestReport r{"shapiro_wilk", w, 1.0, n, ""};
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6/pi
        constexpr double stqr = 1.04719755119660;  // pi/3
        r.p_value = clamp_probability(pi6 * (std::asin(std::sqrt(w)) - stqr));
        return r;
    }
    double y = std::log(w1);
    double m, s;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            r.p_value = 1e-99;
            return r;
        }
        y = -std::log(gamma - y);
        m = poly(c3, an);
        s = std::exp(poly(c4, an));
    } else {
        const double lx = std::log(an);
        m = poly(c5, lx);
        s = std::exp(poly(c6, lx));
    }
    r.p_value = clamp_probability(normal_sf((y - m) / s));
    return r;
}

TestReport anderson_darling_normal(std::span<const double> data) {
    const std::size_t n = data.size();
    if (n < 8) fail(ErrorKind::SampleSizeOutOfRange, "anderson_darling needs n >= 8, got " + std::to_string(n));
    const auto z = standardized_sorted(data, "anderson_darling");
    const double an = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double weight = 2.0 * static_cast<double>(i + 1) - 1.0;
        // log Phi(z_i) + log(1 - Phi(z_{n+1-i}))
        sum += weight * (std::log(normal_cdf(z[i])) + std::log(normal_sf(z[n - 1 - i])));
    }
    const double a2 = -an - sum / an;
    const double aa = a2 * (1.0 + 0.75 / an + 2.25 / (an * an));
    double p;
    if (aa < 0.2) {
        p = 1.0 - std::exp(-13.436 + 101.14 * aa - 223.73 * aa * aa);
    } else if (aa < 0.34) {
        p = 1.0 - std::exp(-8.318 + 42.796 * aa - 59.938 * aa * aa);
    } else if (aa < 0.6) {
        p = std::exp(0.9177 - 4.279 * aa - 1.38 * aa * aa);
    } else if (aa < 10.0) {
        p = std::exp(1.2937 - 5.709 * aa + 0.0186 * aa * aa);
    } else {
        p = 3.7e-24;
    }
    return {"anderson_darling", a2, clamp_probability(p), n, ""};
}

TestReport lilliefors(std::span<const double> data) {
    const std::size_t n = data.size();
    if (n < 8) fail(ErrorKind::SampleSizeOutOfRange, "lilliefors needs n >= 8, got " + std::to_string(n));
    const auto z = standardized_sorted(data, "lilliefors");
    const double an = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf(z[i]);
        d = std::max({d, static_cast<double>(i + 1) / an - f, f - static_cast<double>(i) / an});
    }

    double kd = d;
    double nd = an;
    if (n > 100) {
        kd = d * std::pow(an / 100.0, 0.49);
        nd = 100.0;
    }
    double p = std::exp(-7.01256 * kd * kd * (nd + 2.78019) + 2.99587 * kd * std::sqrt(nd + 2.78019) - 0.122119 +
                        0.974598 / std::sqrt(nd) + 1.67997 / nd);
    if (p > 0.1) {
        const double kk = (std::sqrt(an) - 0.01 + 0.85 / std::sqrt(an)) * d;
        if (kk <= 0.302) {
            p = 1.0;
        } else if (kk <= 0.5) {
            p = 2.76773 - 19.828315 * kk + 80.709644 * kk * kk - 138.55152 * std::pow(kk, 3) +
                81.218052 * std::pow(kk, 4);
        } else if (kk <= 0.9) {
            p = -4.901232 + 40.662806 * kk - 97.490286 * kk * kk + 94.029866 * std::pow(kk, 3) -
                32.355711 * std::pow(kk, 4);
        } else if (kk <= 1.31) {
            p = 6.198765 - 19.558097 * kk + 23.186922 * kk * kk - 12.897002 * std::pow(kk, 3) +
                2.62432 * std::pow(kk, 4);
        } else {
            p = 0.0;
        }
    }
    return {"lilliefors", d, clamp_probability(p), n, ""};
}

TestReport normality_test(std::span<const double> data) {
    if (data.size() > 5000) {
        auto r = anderson_darling_normal(data);
        r.notes = "n > 5000: Anderson-Darling used in place of Shapiro-Wilk";
        return r;
    }
    return shapiro_wilk(data);
}

void DayCounts::validate() const {
    require(labels.size() == counts.size() && counts.size() == expected_weights.size(),
            "day counts: labels, counts and weights must have equal length");
    require(counts.size() >= 2, "day counts: need at least two groups");
    double total = 0.0;
    for (double w : expected_weights) {
        require(w > 0.0, "day counts: expected weights must be positive");
        total += w;
    }
    require(std::abs(total - 1.0) < 1e-9, "day counts: expected weights must sum to 1");
}

DayCounts DayCounts::all_days(const std::array<std::uint64_t, 7>& by_day) {
    return {{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"},
            {by_day.begin(), by_day.end()},
            std::vector<double>(7, 1.0 / 7.0)};
}

DayCounts DayCounts::pooled_weekend_monday(const std::array<std::uint64_t, 7>& by_day) {
    return {{"Sat+Sun+Mon", "Tue", "Wed", "Thu", "Fri"},
            {by_day[5] + by_day[6] + by_day[0], by_day[1], by_day[2], by_day[3], by_day[4]},
            {3.0 / 7.0, 1.0 / 7.0, 1.0 / 7.0, 1.0 / 7.0, 1.0 / 7.0}};
}

DayCounts DayCounts::tuesday_to_friday(const std::array<std::uint64_t, 7>& by_day) {
    return {{"Tue", "Wed", "Thu", "Fri"}, {by_day[1], by_day[2], by_day[3], by_day[4]}, {0.25, 0.25, 0.25, 0.25}};
}

TestReport chi_square_uniformity(const DayCounts& dc) {
    dc.validate();
    const double total = static_cast<double>(std::accumulate(dc.counts.begin(), dc.counts.end(), std::uint64_t{0}));
    double stat = 0.0;
    bool small = false;
    for (std::size_t i = 0; i < dc.counts.size(); ++i) {
        const double expected = total * dc.expected_weights[i];
        if (expected < 1.0) {
            fail(ErrorKind::ExpectedCountTooSmall,
                 "expected count for '" + dc.labels[i] + "' is " + std::to_string(expected) + " (< 1)");
        }
        small = small || expected < 5.0;
        const double d = static_cast<double>(dc.counts[i]) - expected;
        stat += d * d / expected;
    }
    const double df = static_cast<double>(dc.counts.size() - 1);
    const boost::math::chi_squared_distribution<double> chi(df);
    TestReport r{"chi_square_uniformity", stat, clamp_probability(boost::math::cdf(boost::math::complement(chi, stat))),
                 static_cast<std::size_t>(total), small ? "warning: some expected counts below 5" : ""};
    r.degrees_of_freedom = df;
    return r;
}

double multinomial_outcome_count(std::uint64_t n, std::size_t k) {
    // C(n + k - 1, k - 1)
    double c = 1.0;
    for (std::size_t i = 1; i < k; ++i) {
        c *= static_cast<double>(n + i) / static_cast<double>(i);
    }
    return c;
}

TestReport exact_multinomial(std::span<const std::uint64_t> counts, std::span<const double> probs,
                             const ExactMultinomialOptions& options) {
    require(counts.size() == probs.size() && counts.size() >= 2, "exact_multinomial: need matching counts/probs");
    double psum = 0.0;
    for (double p : probs) {
        require(p > 0.0, "exact_multinomial: probabilities must be strictly positive");
        psum += p;
    }
    require(std::abs(psum - 1.0) < 1e-9, "exact_multinomial: probabilities must sum to 1");
    const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    require(n >= 1, "exact_multinomial: total count must be at least 1");

    const std::size_t k = counts.size();
    std::vector<double> log_p(k);
    for (std::size_t i = 0; i < k; ++i) log_p[i] = std::log(probs[i]);
    std::vector<double> log_fact(n + 1, 0.0);
    for (std::uint64_t i = 1; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));

    auto log_pmf = [&](std::span<const std::uint64_t> c) {
        double v = log_fact[n];
        for (std::size_t i = 0; i < k; ++i) v += static_cast<double>(c[i]) * log_p[i] - log_fact[c[i]];
        return v;
    };
    // Outcomes whose probability matches the observed one to within this
    // relative tolerance count as ties and are included.
    const double threshold = log_pmf(counts) + 1e-9;

    TestReport r{"exact_multinomial", std::exp(threshold - 1e-9), 0.0, static_cast<std::size_t>(n), ""};
    if (multinomial_outcome_count(n, k) <= options.max_enumeration) {
        double p_value = 0.0;
        std::vector<std::uint64_t> c(k, 0);
        // Recursive enumeration of compositions with a running log-probability.
        std::function<void(std::size_t, std::uint64_t, double)> visit = [&](std::size_t cat, std::uint64_t left,
                                                                            double partial) {
            if (cat == k - 1) {
                const double v =
                    partial + static_cast<double>(left) * log_p[cat] - log_fact[left];
                if (v <= threshold) p_value += std::exp(v);
                return;
            }
            for (std::uint64_t x = 0; x <= left; ++x) {
                visit(cat + 1, left - x, partial + static_cast<double>(x) * log_p[cat] - log_fact[x]);
            }
        };
        visit(0, n, log_fact[n]);
        r.p_value = clamp_probability(p_value);
        return r;
    }

    Rng rng(options.seed);
    std::vector<double> cumulative(k);
    std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
    std::vector<std::uint64_t> draw(k);
    std::size_t extreme = 0;
    for (std::size_t rep = 0; rep < options.mc_replicates; ++rep) {
        std::fill(draw.begin(), draw.end(), 0);
        for (std::uint64_t item = 0; item < n; ++item) {
            const double u = rng.uniform() * cumulative.back();
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            ++draw[std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), k - 1)];
        }
        if (log_pmf(draw) <= threshold) ++extreme;
    }
    r.p_value = (static_cast<double>(extreme) + 1.0) / (static_cast<double>(options.mc_replicates) + 1.0);
    r.simulated = true;
    r.replicates = options.mc_replicates;
    r.notes = "p-value simulated";
    return r;
}

TestReport poisson_exact_test(std::span<const std::uint64_t> observations, std::size_t bins,
                              const ExactMultinomialOptions& options) {
    require(bins >= 2, "poisson_exact_test: need at least two bins");
    require(!observations.empty(), "poisson_exact_test: no observations");
    const double n = static_cast<double>(observations.size());
    const double rate = static_cast<double>(std::accumulate(observations.begin(), observations.end(), std::uint64_t{0})) / n;
    if (rate == 0.0) {
        return {"poisson_exact", 0.0, 1.0, observations.size(), "all observations zero"};
    }
    std::vector<std::uint64_t> freq(bins, 0);
    for (auto x : observations) ++freq[std::min<std::uint64_t>(x, bins - 1)];
    std::vector<double> probs(bins);
    double term = std::exp(-rate);
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < bins; ++i) {
        probs[i] = term;
        head += term;
        term *= rate / static_cast<double>(i + 1);
    }
    probs[bins - 1] = std::max(1.0 - head, 1e-300);
    // Renormalise so rounding in the tail does not break the sum-to-one check.
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& p : probs) p /= total;
    auto r = exact_multinomial(freq, probs, options);
    r.test_name = "poisson_exact";
    r.notes = (r.notes.empty() ? "" : r.notes + "; ") + "rate " + std::to_string(rate);
    return r;
}

TestReport two_sample_t(std::span<const double> a, std::span<const double> b) {
    require(a.size() >= 2 && b.size() >= 2, "two_sample_t: each sample needs at least two observations");
    const auto [ma, sa] = mean_sd(a);
    const auto [mb, sb] = mean_sd(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    TestReport r{"welch_t", 0.0, 1.0, a.size() + b.size(), ""};
    const double va = sa * sa / na;
    const double vb = sb * sb / nb;
    if (va + vb == 0.0) {
        r.notes = "ZeroVariance: both samples constant";
        if (ma == mb) {
            r.statistic = 0.0;
            r.p_value = 1.0;
        } else {
            r.statistic = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
        return r;
    }
    const double se = std::sqrt(va + vb);
    r.statistic = (ma - mb) / se;
    r.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    const boost::math::students_t_distribution<double> t(r.degrees_of_freedom);
    r.p_value = clamp_probability(2.0 * boost::math::cdf(boost::math::complement(t, std::abs(r.statistic))));
    return r;
}

}  // namespace surgstat
