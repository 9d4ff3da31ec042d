#include "bj/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bj {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

double safe_eval(const std::function<double(std::span<const double>)>& f,
                 std::span<const double> x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

struct Run {
    std::vector<double> x;
    double value;
    int iterations;
    bool converged;
};

Run simplex_run(const std::function<double(std::span<const double>)>& f,
                const std::vector<double>& x0, double step, int budget, double ftol) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = safe_eval(f, pts[i]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    int it = 0;
    bool converged = false;
    for (; it < budget; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (std::isfinite(fv[worst]) && fv[worst] - fv[best] < ftol) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t j = 0; j < n; ++j) {
                out[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
            }
        };

        along(-kReflect, trial);
        const double fr = safe_eval(f, trial);
        if (fr < fv[best]) {
            along(-kReflect * kExpand, trial2);
            const double fe = safe_eval(f, trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                fv[worst] = fe;
            } else {
                pts[worst] = trial;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            pts[worst] = trial;
            fv[worst] = fr;
            continue;
        }
        // contraction, outside if the reflection improved on the worst point
        const bool outside = fr < fv[worst];
        along(outside ? -kContract : kContract, trial2);
        const double fc = safe_eval(f, trial2);
        if (fc < (outside ? fr : fv[worst])) {
            pts[worst] = trial2;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) {
                pts[i][j] = pts[best][j] + kShrink * (pts[i][j] - pts[best][j]);
            }
            fv[i] = safe_eval(f, pts[i]);
        }
    }
    const auto best_it = std::min_element(fv.begin(), fv.end());
    return {pts[static_cast<std::size_t>(best_it - fv.begin())], *best_it, it, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
    NelderMeadResult result;
    if (x0.empty()) {
        result.x = std::move(x0);
        result.value = safe_eval(f, result.x);
        result.converged = std::isfinite(result.value);
        return result;
    }

    int used = 0;
    double step = options.initial_step;
    Run run = simplex_run(f, x0, step, options.max_iterations, options.f_tolerance);
    used += run.iterations;
    for (int r = 0; r < options.max_restarts && run.converged && used < options.max_iterations; ++r) {
        step *= 0.5;
        Run again = simplex_run(f, run.x, step, options.max_iterations - used, options.f_tolerance);
        used += again.iterations;
        const double gain = run.value - again.value;
        if (again.value <= run.value) {
            run.x = again.x;
            run.value = again.value;
        }
        if (!again.converged || !(gain > options.f_tolerance)) {
            break;
        }
    }
    result.x = std::move(run.x);
    result.value = run.value;
    result.iterations = used;
    result.converged = run.converged && std::isfinite(run.value);
    return result;
}

}  // namespace bj
