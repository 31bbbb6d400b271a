#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace surgstat::detail {

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free minimisation: Nelder-Mead (restarted once from its own
/// optimum) followed by a compass search along the coordinate axes. Non-finite
/// objective values are treated as +inf.
MinimizeResult minimize(const Objective& f, std::vector<double> start, std::vector<double> steps,
                        std::size_t max_iterations, double relative_tolerance);

}  // namespace surgstat::detail
