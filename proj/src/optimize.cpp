#include "surgstat/detail/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace surgstat::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval(const Objective& f, const std::vector<double>& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
}

bool spread_converged(double best, double worst, double tol) {
    if (!std::isfinite(worst)) return false;
    return worst - best <= tol * (std::abs(best) + tol);
}

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

// One Nelder-Mead run. `budget` is decremented by the number of iterations used.
MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& start,
                           const std::vector<double>& steps, std::size_t& budget, double tol) {
    const std::size_t dim = start.size();
    Simplex s;
    s.points.push_back(start);
    for (std::size_t i = 0; i < dim; ++i) {
        auto p = start;
        p[i] += steps[i];
        s.points.push_back(std::move(p));
    }
    for (const auto& p : s.points) s.values.push_back(eval(f, p));

    std::vector<std::size_t> order(dim + 1);
    std::size_t iterations = 0;
    bool converged = false;

    while (budget > 0) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        if (spread_converged(s.values[best], s.values[worst], tol)) {
            converged = true;
            break;
        }
        --budget;
        ++iterations;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k < dim; ++k) {
            const std::size_t idx = order[k];
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += s.points[idx][i] / static_cast<double>(dim);
        }
        auto along = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t i = 0; i < dim; ++i) p[i] = centroid[i] + t * (s.points[worst][i] - centroid[i]);
            return p;
        };

        auto reflected = along(-1.0);
        const double fr = eval(f, reflected);
        if (fr < s.values[best]) {
            auto expanded = along(-2.0);
            const double fe = eval(f, expanded);
            if (fe < fr) {
                s.points[worst] = std::move(expanded);
                s.values[worst] = fe;
            } else {
                s.points[worst] = std::move(reflected);
                s.values[worst] = fr;
            }
            continue;
        }
        if (fr < s.values[second]) {
            s.points[worst] = std::move(reflected);
            s.values[worst] = fr;
            continue;
        }
        const bool outside = fr < s.values[worst];
        auto contracted = along(outside ? -0.5 : 0.5);
        const double fc = eval(f, contracted);
        if (fc < (outside ? fr : s.values[worst])) {
            s.points[worst] = std::move(contracted);
            s.values[worst] = fc;
            continue;
        }
        for (std::size_t k = 1; k <= dim; ++k) {
            const std::size_t idx = order[k];
            for (std::size_t i = 0; i < dim; ++i) {
                s.points[idx][i] = s.points[best][i] + 0.5 * (s.points[idx][i] - s.points[best][i]);
            }
            s.values[idx] = eval(f, s.points[idx]);
        }
    }

    const auto it = std::min_element(s.values.begin(), s.values.end());
    const auto idx = static_cast<std::size_t>(it - s.values.begin());
    return {s.points[idx], *it, iterations, converged};
}

}  // namespace

MinimizeResult minimize(const Objective& f, std::vector<double> start, std::vector<double> steps,
                        std::size_t max_iterations, double relative_tolerance) {
    std::size_t budget = max_iterations;
    auto first = nelder_mead(f, start, steps, budget, relative_tolerance);
    std::size_t iterations = first.iterations;
    if (!first.converged) return {first.x, first.value, iterations, false};

    // Restart with a smaller simplex around the optimum; Nelder-Mead can
    // stall on a collapsed simplex.
    std::vector<double> restart_steps(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) restart_steps[i] = 0.1 * steps[i];
    auto second = nelder_mead(f, first.x, restart_steps, budget, relative_tolerance);
    iterations += second.iterations;
    if (!second.converged) return {second.x, second.value, iterations, false};

    auto& x = second.value <= first.value ? second.x : first.x;
    double fx = std::min(second.value, first.value);

    // Compass polish along each coordinate.
    double step = 1e-2;
    while (step > 1e-12) {
        if (budget == 0) return {x, fx, iterations, false};
        --budget;
        ++iterations;
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double sign : {1.0, -1.0}) {
                auto trial = x;
                trial[i] += sign * step * std::max(1.0, std::abs(x[i]));
                const double ft = eval(f, trial);
                if (ft < fx) {
                    x = std::move(trial);
                    fx = ft;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {x, fx, iterations, true};
}

}  // namespace surgstat::detail
