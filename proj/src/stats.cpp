#include "bj/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace bj::stats {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

double chi_square_sf(double x, double dof) {
    if (x <= 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(dof), x));
}

double mean(std::span<const double> x) {
    if (x.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) {
        ss += (v - m) * (v - m);
    }
    return ss / static_cast<double>(x.size());
}

}  // namespace bj::stats
