#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bj {

struct NelderMeadOptions {
    double initial_step = 0.5;
    int max_iterations = 2000;
    /// Converged once max f - min f over the simplex drops below this.
    double f_tolerance = 1e-8;
    /// Fresh-simplex restarts from the incumbent after convergence.
    int max_restarts = 4;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimisation. Non-finite objective values are treated as +inf.
[[nodiscard]] NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                           std::vector<double> x0,
                                           const NelderMeadOptions& options = {});

}  // namespace bj
