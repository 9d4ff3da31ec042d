#include "bj/arima.hpp"

#include "arima_internal.hpp"
#include "bj/correlation.hpp"
#include "bj/error.hpp"
#include "bj/nelder_mead.hpp"
#include "bj/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace bj {

std::string ArimaSpec::label() const {
    return "ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
}

InformationCriteria information_criteria(double loglik, int k, int n) {
    const double kk = k;
    const double nn = n;
    return {-2.0 * loglik + 2.0 * kk, -2.0 * loglik + kk * std::log(nn),
            -2.0 * loglik + 2.0 * kk * std::log(std::log(nn))};
}

ArimaParams transform_params(std::span<const double> unconstrained, int p, int q) {
    if (p < 0 || q < 0 || unconstrained.size() != static_cast<std::size_t>(p + q + 1)) {
        throw Error(ErrorCode::LengthMismatch, "unconstrained vector must hold p + q + 1 values");
    }
    std::vector<double> ar_partials(static_cast<std::size_t>(p));
    std::vector<double> ma_partials(static_cast<std::size_t>(q));
    for (int i = 0; i < p; ++i) {
        ar_partials[static_cast<std::size_t>(i)] = std::tanh(unconstrained[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < q; ++j) {
        ma_partials[static_cast<std::size_t>(j)] =
            std::tanh(unconstrained[static_cast<std::size_t>(p + j)]);
    }
    ArimaParams out;
    out.ar = detail::partials_to_coefficients(ar_partials);
    // 1 + sum theta z^i is the AR-style polynomial 1 - sum phi z^i with theta = -phi
    out.ma = detail::partials_to_coefficients(ma_partials);
    for (double& t : out.ma) {
        t = -t;
    }
    out.sigma2 = std::exp(unconstrained[static_cast<std::size_t>(p + q)]);
    return out;
}

std::vector<double> inverse_transform(const ArimaParams& params) {
    if (!(params.sigma2 > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "sigma2 must be positive");
    }
    std::vector<double> out;
    out.reserve(params.ar.size() + params.ma.size() + 1);
    for (double r : detail::coefficients_to_partials(params.ar)) {
        out.push_back(std::atanh(r));
    }
    std::vector<double> neg_ma(params.ma.size());
    std::transform(params.ma.begin(), params.ma.end(), neg_ma.begin(), [](double t) { return -t; });
    for (double r : detail::coefficients_to_partials(neg_ma)) {
        out.push_back(std::atanh(r));
    }
    out.push_back(std::log(params.sigma2));
    return out;
}

std::vector<RootInfo> polynomial_roots(std::span<const double> coeffs, PolyKind kind) {
    const auto deg = static_cast<Eigen::Index>(coeffs.size());
    if (deg == 0) {
        return {};
    }
    // a_0 = 1, a_i = theta_i (MA) or -phi_i (AR)
    const double sign = kind == PolyKind::MA ? 1.0 : -1.0;
    const double lead = sign * coeffs.back();
    if (lead == 0.0 || !std::isfinite(lead)) {
        throw Error(ErrorCode::InvalidParams, "leading polynomial coefficient must be nonzero");
    }
    auto a = [&](Eigen::Index i) { return i == 0 ? 1.0 : sign * coeffs[static_cast<std::size_t>(i - 1)]; };

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (Eigen::Index j = 0; j < deg; ++j) {
        companion(0, j) = -a(deg - 1 - j) / lead;
    }
    for (Eigen::Index i = 1; i < deg; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();

    std::vector<RootInfo> roots;
    roots.reserve(static_cast<std::size_t>(deg));
    for (Eigen::Index i = 0; i < deg; ++i) {
        const double re = ev(i).real();
        double im = ev(i).imag();
        const double mod = std::hypot(re, im);
        if (std::abs(im) <= 1e-12 * std::max(1.0, mod)) {
            im = 0.0;
        }
        double freq = std::atan2(im, re) / (2.0 * std::numbers::pi);
        if (im == 0.0 && re < 0.0) {
            freq = -0.5;
        }
        roots.push_back({re, im, std::hypot(re, im), freq});
    }
    std::sort(roots.begin(), roots.end(), [](const RootInfo& x, const RootInfo& y) {
        if (x.frequency != y.frequency) return x.frequency < y.frequency;
        return x.modulus < y.modulus;
    });
    return roots;
}

namespace {

constexpr double kMaxPartial = 0.99;

std::vector<double> yule_walker(std::span<const double> x, int order) {
    if (order == 0) {
        return {};
    }
    const TimeSeries s(0, std::vector<double>(x.begin(), x.end()), ScaleTag{ScaleBase::Real, 0});
    const auto acf = sample_acf(s, order);
    std::vector<double> r(acf.size());
    std::transform(acf.begin(), acf.end(), r.begin(), [](const CorrelogramPoint& c) { return c.value; });
    return detail::partials_to_coefficients(durbin_levinson_pacf(r));
}

// Scale coefficient i by lambda^i until every partial autocorrelation is inside the margin;
// this pushes all roots outward by 1/lambda per pass.
std::vector<double> pull_inside(std::vector<double> coeffs, double sign) {
    for (int pass = 0; pass < 200; ++pass) {
        std::vector<double> as_ar(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) as_ar[i] = sign * coeffs[i];
        bool ok = true;
        try {
            for (double r : detail::coefficients_to_partials(as_ar)) {
                ok = ok && std::abs(r) < kMaxPartial;
            }
        } catch (const Error&) {
            ok = false;
        }
        if (ok) {
            return coeffs;
        }
        double f = 1.0;
        for (double& c : coeffs) {
            f *= 0.95;
            c *= f;
        }
    }
    std::fill(coeffs.begin(), coeffs.end(), 0.0);
    return coeffs;
}

struct Warm {
    std::vector<double> ar;
    std::vector<double> ma;
};

/// Hannan-Rissanen: long autoregression for innovations, then OLS on lagged values and
/// lagged innovations.
Warm hannan_rissanen(std::span<const double> x, int p, int q) {
    const int n = static_cast<int>(x.size());
    Warm fallback;
    try {
        fallback.ar = yule_walker(x, std::min(p, n / 2));
    } catch (const Error&) {
        fallback.ar.clear();
    }
    fallback.ar.resize(static_cast<std::size_t>(p), 0.0);
    fallback.ma.assign(static_cast<std::size_t>(q), 0.0);
    if (q == 0) {
        return fallback;
    }

    const int long_order =
        std::min(n / 4, std::max(p + q + 1, static_cast<int>(10.0 * std::log10(static_cast<double>(n)))));
    const int start = std::max(p, long_order + q);
    const int rows = n - start;
    if (long_order < 1 || rows < p + q + 3) {
        return fallback;
    }
    std::vector<double> long_ar;
    try {
        long_ar = yule_walker(x, long_order);
    } catch (const Error&) {
        return fallback;
    }
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (int t = long_order; t < n; ++t) {
        double pred = 0.0;
        for (int j = 1; j <= long_order; ++j) {
            pred += long_ar[static_cast<std::size_t>(j - 1)] * x[static_cast<std::size_t>(t - j)];
        }
        e[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(t)] - pred;
    }
    Eigen::MatrixXd design(rows, p + q);
    Eigen::VectorXd dep(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = start + r;
        dep(r) = x[static_cast<std::size_t>(t)];
        for (int i = 1; i <= p; ++i) design(r, i - 1) = x[static_cast<std::size_t>(t - i)];
        for (int j = 1; j <= q; ++j) design(r, p + j - 1) = e[static_cast<std::size_t>(t - j)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < p + q) {
        return fallback;
    }
    const Eigen::VectorXd beta = qr.solve(dep);
    if (!beta.allFinite()) {
        return fallback;
    }
    Warm w;
    w.ar.assign(beta.data(), beta.data() + p);
    w.ma.assign(beta.data() + p, beta.data() + p + q);
    w.ar = pull_inside(std::move(w.ar), 1.0);
    w.ma = pull_inside(std::move(w.ma), -1.0);
    return w;
}

std::vector<double> to_unconstrained(const Warm& w) {
    ArimaParams params;
    params.ar = w.ar;
    params.ma = w.ma;
    auto u = inverse_transform(params);
    u.pop_back();
    return u;
}

}  // namespace

ArimaFit fit(const ArimaSpec& spec, const TimeSeries& data, const FitOptions& options) {
    if (spec.p < 0 || spec.d < 0 || spec.q < 0) {
        throw Error(ErrorCode::InvalidParams, "model orders must be non-negative");
    }
    if (data.size() <= static_cast<std::size_t>(spec.d)) {
        throw Error(ErrorCode::TooFewObservations, spec.label() + " needs more than d observations");
    }
    const auto w = difference(data, spec.d).first;
    const auto n = static_cast<int>(w.size());
    const int k = spec.parameter_count();
    if (n <= k + 5) {
        throw Error(ErrorCode::TooFewObservations,
                    spec.label() + " with " + std::to_string(k) + " parameters needs more than " +
                        std::to_string(k + 5) + " observations after differencing, got " +
                        std::to_string(n));
    }

    const double c = spec.with_constant ? stats::mean(w.values()) : 0.0;
    std::vector<double> centred(w.values().begin(), w.values().end());
    for (double& v : centred) v -= c;

    const int p = spec.p;
    const int q = spec.q;
    auto unpack = [p, q](std::span<const double> u) {
        std::vector<double> full(u.begin(), u.end());
        full.push_back(0.0);
        return transform_params(full, p, q);
    };
    auto objective = [&](std::span<const double> u) {
        try {
            const auto params = unpack(u);
            const auto ss = detail::build_state_space(params.ar, params.ma);
            const auto run = detail::unit_filter(ss, centred);
            return -detail::concentrated_loglik(run, centred.size());
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    NelderMeadResult best;
    best.value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    if (p + q == 0) {
        best.value = objective({});
        best.converged = std::isfinite(best.value);
    } else {
        std::vector<double> warm;
        try {
            warm = to_unconstrained(hannan_rissanen(centred, p, q));
        } catch (const Error&) {
            warm.assign(static_cast<std::size_t>(p + q), 0.0);
        }
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> jitter(0.0, options.jitter);
        NelderMeadOptions nm;
        nm.max_iterations = options.max_iterations;
        nm.f_tolerance = options.f_tolerance;
        for (int s = 0; s < std::max(1, options.starts); ++s) {
            auto x0 = warm;
            if (s > 0) {
                for (double& v : x0) v += jitter(rng);
            }
            auto res = nelder_mead(objective, std::move(x0), nm);
            iterations += res.iterations;
            if (res.value < best.value) {
                best = std::move(res);
            }
        }
    }
    if (!std::isfinite(best.value)) {
        throw Error(ErrorCode::OptimizerFailed, spec.label() + ": every start gave a non-finite likelihood");
    }

    ArimaParams params = unpack(best.x);
    params.constant = c;
    {
        const auto ss = detail::build_state_space(params.ar, params.ma);
        const auto run = detail::unit_filter(ss, centred);
        params.sigma2 = run.sum_scaled_sq / static_cast<double>(n);
    }
    const auto filtered = kalman_filter(spec, params, w.values());

    ArimaFit out;
    out.spec = spec;
    out.params = std::move(params);
    out.loglik = filtered.loglik;
    out.criteria = information_criteria(out.loglik, k, n);
    out.residuals.emplace(w.start_year(), filtered.innovations, ScaleTag{ScaleBase::Real, 0});
    out.n_obs = n;
    out.converged = best.converged;
    out.iterations = iterations;
    if (options.compute_std_errors) {
        out.inference = std_errors(out, data, &out.hessian_ok);
    }
    return out;
}

std::vector<ParamInference> std_errors(const ArimaFit& fit, const TimeSeries& data, bool* hessian_ok) {
    const auto& spec = fit.spec;
    const auto w = difference(data, spec.d).first;

    std::vector<std::string> names;
    std::vector<double> theta;
    if (spec.with_constant) {
        names.emplace_back("const");
        theta.push_back(fit.params.constant);
    }
    for (int i = 0; i < spec.p; ++i) {
        names.push_back("ar.L" + std::to_string(i + 1));
        theta.push_back(fit.params.ar[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < spec.q; ++j) {
        names.push_back("ma.L" + std::to_string(j + 1));
        theta.push_back(fit.params.ma[static_cast<std::size_t>(j)]);
    }
    names.emplace_back("sigma2");
    theta.push_back(fit.params.sigma2);

    auto unpack = [&](const std::vector<double>& x) {
        ArimaParams params;
        std::size_t at = 0;
        if (spec.with_constant) params.constant = x[at++];
        for (int i = 0; i < spec.p; ++i) params.ar.push_back(x[at++]);
        for (int j = 0; j < spec.q; ++j) params.ma.push_back(x[at++]);
        params.sigma2 = x[at];
        return params;
    };
    auto nll = [&](const std::vector<double>& x) { return -kalman_loglik(spec, unpack(x), w.values()); };

    const auto m = static_cast<Eigen::Index>(theta.size());
    std::vector<double> h(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        h[i] = 1e-4 * std::max(std::abs(theta[i]), 1e-2);
    }

    std::vector<ParamInference> table(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        table[i].name = names[i];
        table[i].coef = theta[i];
    }
    bool ok = true;
    Eigen::MatrixXd hess(m, m);
    try {
        const double f0 = nll(theta);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            auto xp = theta;
            auto xm = theta;
            xp[ui] += h[ui];
            xm[ui] -= h[ui];
            hess(i, i) = (nll(xp) - 2.0 * f0 + nll(xm)) / (h[ui] * h[ui]);
            for (Eigen::Index j = 0; j < i; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                auto pp = theta, pm = theta, mp = theta, mm = theta;
                pp[ui] += h[ui]; pp[uj] += h[uj];
                pm[ui] += h[ui]; pm[uj] -= h[uj];
                mp[ui] -= h[ui]; mp[uj] += h[uj];
                mm[ui] -= h[ui]; mm[uj] -= h[uj];
                const double v = (nll(pp) - nll(pm) - nll(mp) + nll(mm)) / (4.0 * h[ui] * h[uj]);
                hess(i, j) = v;
                hess(j, i) = v;
            }
        }
        ok = hess.allFinite();
    } catch (const Error&) {
        ok = false;
    }

    Eigen::MatrixXd cov;
    if (ok) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(hess);
        if (!lu.isInvertible()) {
            ok = false;
        } else {
            cov = lu.inverse();
            Eigen::LLT<Eigen::MatrixXd> llt(hess);
            ok = llt.info() == Eigen::Success;
        }
    }
    if (hessian_ok != nullptr) {
        *hessian_ok = ok;
    }
    if (cov.size() == 0) {
        return table;
    }
    const double z975 = stats::normal_quantile(0.975);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double var = cov(i, i);
        if (!(var > 0.0) || !std::isfinite(var)) {
            continue;
        }
        auto& row = table[static_cast<std::size_t>(i)];
        const double se = std::sqrt(var);
        row.std_err = se;
        row.z = row.coef / se;
        row.p_value = 2.0 * (1.0 - stats::normal_cdf(std::abs(*row.z)));
        row.ci_low = row.coef - z975 * se;
        row.ci_high = row.coef + z975 * se;
    }
    return table;
}

}  // namespace bj
