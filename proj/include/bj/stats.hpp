#pragma once

#include <span>

namespace bj::stats {

[[nodiscard]] double normal_cdf(double x);
[[nodiscard]] double normal_quantile(double p);
/// Upper tail P(X > x) for X ~ chi-square(dof).
[[nodiscard]] double chi_square_sf(double x, double dof);

[[nodiscard]] double mean(std::span<const double> x);
/// Biased (1/n) variance.
[[nodiscard]] double variance(std::span<const double> x);

}  // namespace bj::stats
