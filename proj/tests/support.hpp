#pragma once

// Closed-form datasets shared with tests/oracles/make_oracles.py, plus small
// brute-force oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace testdata {

inline std::vector<double> wave(int n, double a = 0.3, double b = 1.7) {
    std::vector<double> x;
    for (int i = 1; i <= n; ++i) x.push_back(std::log(1.0 + i) + a * std::sin(b * i));
    return x;
}

inline std::vector<double> skewed(int n) {
    std::vector<double> x;
    for (int i = 1; i <= n; ++i) x.push_back(std::exp(1.5 * std::sin(i)));
    return x;
}

inline std::vector<double> heavy(int n) {
    std::vector<double> x;
    for (int i = 1; i <= n; ++i) {
        const double frac = std::fmod(i * 0.6180339887498949, 1.0);
        x.push_back(std::tan(std::numbers::pi * (frac - 0.5)));
    }
    return x;
}

inline std::vector<double> durations(int n) {
    std::vector<double> x;
    for (int i = 1; i <= n; ++i) x.push_back(std::exp(0.5 + 0.6 * std::sin(2.3 * i) + 0.2 * std::cos(0.7 * i)));
    return x;
}

inline double log_factorial(std::uint64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double multinomial_pmf(const std::vector<std::uint64_t>& x, const std::vector<double>& p) {
    std::uint64_t n = 0;
    double lp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        n += x[i];
        lp += static_cast<double>(x[i]) * std::log(p[i]) - log_factorial(x[i]);
    }
    return std::exp(lp + log_factorial(n));
}

// Visits every composition of n into k nonnegative parts.
inline void for_each_composition(std::uint64_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> x(k, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i + 1 == k) {
            x[i] = left;
            visit(x);
            return;
        }
        for (std::uint64_t v = 0; v <= left; ++v) {
            x[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, n);
}

// Exact test p-value by listing every outcome.
inline double naive_exact_multinomial(const std::vector<std::uint64_t>& counts, const std::vector<double>& p) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    const double observed = multinomial_pmf(counts, p);
    double total = 0.0;
    for_each_composition(n, counts.size(), [&](const std::vector<std::uint64_t>& x) {
        const double px = multinomial_pmf(x, p);
        if (px <= observed * (1.0 + 1e-7)) total += px;
    });
    return std::min(total, 1.0);
}

// Composite Simpson rule on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Kolmogorov distance between the empirical cdf of p and the uniform cdf.
inline double ks_uniform(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const double n = static_cast<double>(p.size());
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max({d, (i + 1) / n - p[i], p[i] - i / n});
    }
    return d;
}

}  // namespace testdata
