#pragma once

#include "drawdown/common.hpp"

namespace drawdown {

/// Scale function of Brownian motion with drift mu:
///   S^mu(x) = (1 - e^{-2 mu x}) / (2 mu),   S^0(x) = x.
/// Evaluated as -expm1(-2 mu x)/(2 mu); for |mu x| < 1e-8 the two-term
/// series x (1 - mu x) is used, which is exact to double precision there
/// and continuous in mu at 0.
inline double scale(double mu, double x) {
    const double p = mu * x;
    if (std::fabs(p) < 1e-8) return x * (1.0 - p);
    return -std::expm1(-2.0 * p) / (2.0 * mu);
}

/// S^mu(y) - S^mu(x), computed as e^{-2 mu x} S^mu(y - x) to avoid
/// cancellation between two large values.
inline double scale_diff(double mu, double x, double y) {
    return std::exp(-2.0 * mu * x) * scale(mu, y - x);
}

/// P^mu_x(H_a < H_b) = (S(b) - S(x)) / (S(b) - S(a)) for a <= x <= b;
/// 1 at x = a, 0 at x = b.
inline double hit_before(double mu, double x, double a, double b) {
    require(a < b, "hit_before: requires a < b");
    require(x >= a && x <= b, "hit_before: x must lie in [a, b]");
    if (x == a) return 1.0;
    if (x == b) return 0.0;
    // ratio rewritten as e^{-2 mu (x-a)} S(b-x)/S(b-a)
    return std::exp(-2.0 * mu * (x - a)) * scale(mu, b - x) / scale(mu, b - a);
}

}  // namespace drawdown
