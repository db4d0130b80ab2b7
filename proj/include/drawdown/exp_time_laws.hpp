#pragma once

#include <algorithm>

#include "drawdown/common.hpp"

namespace drawdown {

// Laws of (D+_T, D-_T) for standard BM at an independent Exp(lambda) time T.
// Everything is expressed through tanh/sech of s = arg * sqrt(2 lambda), so
// no intermediate cosh/sinh can overflow.

/// Marginal CDF P(D+_T < a) = P(D-_T < a) = 1 - sech(a sqrt(2 lambda)).
inline double exp_time_marginal_cdf(double lambda, double a) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(a >= 0.0, "exp_time laws: requires nonnegative arguments");
    return -std::expm1(std::log(sech(a * std::sqrt(2.0 * lambda))));
}

namespace detail {
// v(a, b) for a <= b; the cross term of the joint law.
inline double v_ordered(double lambda, double a, double b) {
    if (a == 0.0) return 0.0;
    const double c = std::sqrt(2.0 * lambda);
    const double s = a * c;
    const double t = std::tanh(0.5 * s);
    return t * t * sech(s) * std::exp(-(b - a) * c * coth(s));
}
}  // namespace detail

/// The cross term v(alpha ^ beta, alpha v beta). With m = min, M = max this
/// is P(D+_T > M, D-_T < m) = P(D-_T > M, D+_T < m); as a formula for
/// P(D+_T > alpha, D-_T < beta) it applies when alpha >= beta (the general
/// quadrant probability is exp_time_marginal_cdf(beta) - joint CDF).
inline double exp_time_crossterm(double lambda, double alpha, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha >= 0.0 && beta >= 0.0, "exp_time laws: requires nonnegative arguments");
    return detail::v_ordered(lambda, std::min(alpha, beta), std::max(alpha, beta));
}

/// P(D+_T > alpha, D-_T > beta) = sech((alpha v beta) sqrt(2 lambda)) - v(^, v).
inline double exp_time_joint_survival(double lambda, double alpha, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha >= 0.0 && beta >= 0.0, "exp_time laws: requires nonnegative arguments");
    const double m = std::min(alpha, beta), M = std::max(alpha, beta);
    return sech(M * std::sqrt(2.0 * lambda)) - detail::v_ordered(lambda, m, M);
}

/// Joint CDF F(alpha, beta) = P(D+_T < alpha, D-_T < beta)
///   = 1 - sech(m sqrt(2 lambda)) - v(m, M),  m = min, M = max.
/// Symmetric in (alpha, beta) by construction.
inline double exp_time_joint_cdf(double lambda, double alpha, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha >= 0.0 && beta >= 0.0, "exp_time laws: requires nonnegative arguments");
    const double m = std::min(alpha, beta), M = std::max(alpha, beta);
    if (m == 0.0) return 0.0;
    return 1.0 - sech(m * std::sqrt(2.0 * lambda)) - detail::v_ordered(lambda, m, M);
}

/// Joint density of (D+_T, D-_T) at (alpha, beta): with x = max, y = min,
///   f(x,y) = 2 lambda / (cosh(y c)+1)^2 (2 + (x-y) c / sinh(y c))
///            exp(-(x-y) c coth(y c)),   c = sqrt(2 lambda).
inline double exp_time_joint_density(double lambda, double alpha, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha > 0.0 && beta > 0.0, "exp_time_joint_density: requires positive arguments");
    const double c = std::sqrt(2.0 * lambda);
    const double x = std::max(alpha, beta), y = std::min(alpha, beta);
    const double s = y * c;
    const double sh = sech(0.5 * s);
    const double front = 0.5 * lambda * sh * sh * sh * sh;  // 2 lambda / (cosh(s)+1)^2
    return front * (2.0 + (x - y) * c / std::sinh(s)) * std::exp(-(x - y) * c * coth(s));
}

/// The ordered-event laws on {H_I < H_S} (infimum attained first).
struct OrderedLaws {
    double joint_cdf_ordered;    // P(D+ < alpha, D- < beta, H_I < H_S)
    double dplus_density_ordered;  // density of D+ on the event, at alpha
    double dplus_cdf_ordered;    // P(D+ < alpha, H_I < H_S)
    double dminus_cdf_ordered;   // P(D- < beta, H_I < H_S)
};

inline double exp_time_ordered_joint_cdf(double lambda, double alpha, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha >= 0.0 && beta >= 0.0, "exp_time laws: requires nonnegative arguments");
    const double c = std::sqrt(2.0 * lambda);
    const double m = std::min(alpha, beta);
    const double tm = std::tanh(0.5 * m * c);
    double r = 0.5 * tm * tm;
    if (beta < alpha && beta > 0.0) {
        const double s = beta * c;
        const double tb = std::tanh(0.5 * s);
        r += tb * tb * sech(s) * (-std::expm1(-(alpha - beta) * c * coth(s)));
    }
    return r;
}

inline double exp_time_dplus_density_ordered(double lambda, double alpha) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha > 0.0, "exp_time laws: requires positive argument");
    const double c = std::sqrt(2.0 * lambda);
    const double h = 0.5 * alpha * c;
    const double se = sech(h);
    return 0.5 * c * std::tanh(h) * se * se;
}

inline double exp_time_dplus_cdf_ordered(double lambda, double alpha) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(alpha >= 0.0, "exp_time laws: requires nonnegative arguments");
    const double t = std::tanh(0.5 * alpha * std::sqrt(2.0 * lambda));
    return 0.5 * t * t;
}

inline double exp_time_dminus_cdf_ordered(double lambda, double beta) {
    require(lambda > 0.0, "exp_time laws: requires lambda > 0");
    require(beta >= 0.0, "exp_time laws: requires nonnegative arguments");
    const double s = beta * std::sqrt(2.0 * lambda);
    const double t = std::tanh(0.5 * s);
    return 0.5 * t * t * (1.0 + 2.0 * sech(s));
}

inline OrderedLaws exp_time_ordered_laws(double lambda, double alpha, double beta) {
    return {exp_time_ordered_joint_cdf(lambda, alpha, beta),
            alpha > 0.0 ? exp_time_dplus_density_ordered(lambda, alpha) : 0.0,
            exp_time_dplus_cdf_ordered(lambda, alpha),
            exp_time_dminus_cdf_ordered(lambda, beta)};
}

}  // namespace drawdown
