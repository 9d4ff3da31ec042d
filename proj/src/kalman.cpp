#include "arima_internal.hpp"

#include "bj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bj {

namespace detail {

StateSpace build_state_space(std::span<const double> ar, std::span<const double> ma) {
    const auto p = static_cast<Eigen::Index>(ar.size());
    const auto q = static_cast<Eigen::Index>(ma.size());
    const Eigen::Index m = std::max(p, q + 1);
    StateSpace ss;
    ss.transition = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < p; ++i) {
        ss.transition(i, 0) = ar[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        ss.transition(i, i + 1) = 1.0;
    }
    ss.loading = Eigen::VectorXd::Zero(m);
    ss.loading(0) = 1.0;
    for (Eigen::Index j = 0; j < q; ++j) {
        ss.loading(j + 1) = ma[static_cast<std::size_t>(j)];
    }
    return ss;
}

Eigen::MatrixXd stationary_covariance(const StateSpace& ss) {
    // Doubling: S_{k+1} = S_k + A_k S_k A_k', A_{k+1} = A_k^2 sums T^j Q T^j' over j < 2^k.
    Eigen::MatrixXd s = ss.loading * ss.loading.transpose();
    Eigen::MatrixXd a = ss.transition;
    for (int it = 0; it < 64; ++it) {
        const Eigen::MatrixXd add = a * s * a.transpose();
        s += add;
        const double scale = s.cwiseAbs().maxCoeff();
        if (!std::isfinite(scale) || scale > 1e12) {
            throw Error(ErrorCode::InvalidParams, "AR part is not stationary");
        }
        if (add.cwiseAbs().maxCoeff() <= 1e-17 * scale) {
            return 0.5 * (s + s.transpose());
        }
        a = a * a;
    }
    throw Error(ErrorCode::InvalidParams, "AR part is not stationary (Lyapunov iteration stalled)");
}

UnitFilter unit_filter(const StateSpace& ss, std::span<const double> centred) {
    const Eigen::Index m = ss.transition.rows();
    const Eigen::MatrixXd& t = ss.transition;
    const Eigen::MatrixXd rr = ss.loading * ss.loading.transpose();

    Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
    Eigen::MatrixXd p = stationary_covariance(ss);
    Eigen::VectorXd gain(m);
    Eigen::MatrixXd tp(m, m);

    UnitFilter out;
    out.innovations.reserve(centred.size());
    out.variance_ratio.reserve(centred.size());
    for (double y : centred) {
        const double v = y - a(0);
        const double f = p(0, 0);
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw Error(ErrorCode::NonFiniteLikelihood, "prediction variance is not positive");
        }
        tp.noalias() = t * p;
        gain = tp.col(0) / f;
        a = t * a + gain * v;
        Eigen::MatrixXd next = tp * t.transpose() + rr;
        next.noalias() -= f * gain * gain.transpose();
        p = 0.5 * (next + next.transpose());

        out.innovations.push_back(v);
        out.variance_ratio.push_back(f);
        out.sum_log_f += std::log(f);
        out.sum_scaled_sq += v * v / f;
    }
    if (!std::isfinite(out.sum_log_f) || !std::isfinite(out.sum_scaled_sq)) {
        throw Error(ErrorCode::NonFiniteLikelihood, "Kalman filter diverged");
    }
    out.next_state = a;
    return out;
}

double concentrated_loglik(const UnitFilter& run, std::size_t n) {
    const double nn = static_cast<double>(n);
    const double sigma2 = run.sum_scaled_sq / nn;
    if (!(sigma2 > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return -0.5 * nn * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0) - 0.5 * run.sum_log_f;
}

std::vector<double> partials_to_coefficients(std::span<const double> partials) {
    const std::size_t p = partials.size();
    std::vector<double> phi(p, 0.0);
    std::vector<double> prev(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        const double r = partials[k];
        phi[k] = r;
        for (std::size_t j = 0; j < k; ++j) {
            phi[j] = prev[j] - r * prev[k - 1 - j];
        }
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(k) + 1, prev.begin());
    }
    return phi;
}

std::vector<double> coefficients_to_partials(std::span<const double> coeffs) {
    const std::size_t p = coeffs.size();
    std::vector<double> cur(coeffs.begin(), coeffs.end());
    std::vector<double> partials(p, 0.0);
    for (std::size_t k = p; k-- > 0;) {
        const double r = cur[k];
        if (!(std::abs(r) < 1.0)) {
            throw Error(ErrorCode::InvalidParams, "polynomial has a root on or inside the unit circle");
        }
        partials[k] = r;
        std::vector<double> prev(k);
        const double denom = 1.0 - r * r;
        for (std::size_t j = 0; j < k; ++j) {
            prev[j] = (cur[j] + r * cur[k - 1 - j]) / denom;
        }
        cur = std::move(prev);
    }
    return partials;
}

}  // namespace detail

FilterResult kalman_filter(const ArimaSpec& spec, const ArimaParams& params,
                           std::span<const double> data) {
    if (params.ar.size() != static_cast<std::size_t>(spec.p) ||
        params.ma.size() != static_cast<std::size_t>(spec.q)) {
        throw Error(ErrorCode::InvalidParams, "parameter lengths do not match " + spec.label());
    }
    if (!(params.sigma2 > 0.0) || !std::isfinite(params.sigma2)) {
        throw Error(ErrorCode::InvalidParams, "sigma2 must be positive");
    }
    const double c = spec.with_constant ? params.constant : 0.0;
    std::vector<double> centred(data.begin(), data.end());
    for (double& v : centred) {
        v -= c;
    }
    const auto ss = detail::build_state_space(params.ar, params.ma);
    const auto run = detail::unit_filter(ss, centred);

    FilterResult out;
    out.innovations = run.innovations;
    out.variance_ratio = run.variance_ratio;
    out.predictions.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out.predictions[i] = data[i] - run.innovations[i];
    }
    out.next_state.assign(run.next_state.data(), run.next_state.data() + run.next_state.size());
    const double n = static_cast<double>(data.size());
    out.loglik = -0.5 * (n * std::log(2.0 * std::numbers::pi * params.sigma2) + run.sum_log_f +
                         run.sum_scaled_sq / params.sigma2);
    if (!std::isfinite(out.loglik)) {
        throw Error(ErrorCode::NonFiniteLikelihood, "log-likelihood is not finite");
    }
    return out;
}

double kalman_loglik(const ArimaSpec& spec, const ArimaParams& params,
                     std::span<const double> data) {
    return kalman_filter(spec, params, data).loglik;
}

}  // namespace bj
