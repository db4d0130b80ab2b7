#pragma once

#include <numbers>

#include "drawdown/common.hpp"

namespace drawdown {

// Laws attached to the decomposition of the exponentially killed Brownian
// path at the first hitting times of its infimum (H_I) and supremum (H_S).

/// Joint density of (I_T, S_T) at (a, b), a < 0 < b:
///   lambda cosh((b+a) c / 2) / cosh^3((b-a) c / 2),  c = sqrt(2 lambda).
inline double inf_sup_joint_density(double lambda, double a, double b) {
    require(lambda > 0.0, "inf_sup laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "inf_sup laws: requires a < 0 < b");
    const double c = std::sqrt(2.0 * lambda);
    return lambda *
           std::exp(log_cosh(0.5 * (b + a) * c) - 3.0 * log_cosh(0.5 * (b - a) * c));
}

/// Marginal density of I_T at a < 0: sqrt(2 lambda) e^{a sqrt(2 lambda)}.
inline double inf_marginal_density(double lambda, double a) {
    require(lambda > 0.0, "inf_sup laws: requires lambda > 0");
    require(a < 0.0, "inf_marginal_density: requires a < 0");
    const double c = std::sqrt(2.0 * lambda);
    return c * std::exp(a * c);
}

/// Density of (I_T, S_T) restricted to {H_I < H_S} at (a, b), a < 0 < b:
///   2 lambda (cosh((b-a) c) - 1) sinh(b c) / sinh^3((b-a) c).
inline double inf_sup_ordered_density(double lambda, double a, double b) {
    require(lambda > 0.0, "inf_sup laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "inf_sup laws: requires a < 0 < b");
    const double c = std::sqrt(2.0 * lambda);
    const double x = (b - a) * c;
    // log(cosh x - 1) = log 2 + 2 log sinh(x/2)
    const double lg = std::log(2.0 * lambda) + std::numbers::ln2 +
                      2.0 * log_sinh(0.5 * x) + log_sinh(b * c) - 3.0 * log_sinh(x);
    return std::exp(lg);
}

/// Joint density of (I_T, X_T) at (a, z), a < 0, a < z:
///   2 lambda e^{2 a sqrt(2 lambda)} e^{-z sqrt(2 lambda)}.
inline double inf_terminal_joint_density(double lambda, double a, double z) {
    require(lambda > 0.0, "inf_sup laws: requires lambda > 0");
    require(a < 0.0, "inf_terminal_joint_density: requires a < 0");
    if (z <= a) return 0.0;
    const double c = std::sqrt(2.0 * lambda);
    return 2.0 * lambda * std::exp((2.0 * a - z) * c);
}

/// Density of H_I (and of T - H_I): Gamma(1/2, lambda),
///   sqrt(lambda / (pi u)) e^{-lambda u}.
inline double h_inf_density(double lambda, double u) {
    require(lambda > 0.0, "h_inf laws: requires lambda > 0");
    require(u > 0.0, "h_inf_density: requires u > 0");
    return std::sqrt(lambda / (std::numbers::pi * u)) * std::exp(-lambda * u);
}

/// CDF of Gamma(1/2, lambda): erf(sqrt(lambda u)).
inline double h_inf_cdf(double lambda, double u) {
    require(lambda > 0.0, "h_inf laws: requires lambda > 0");
    if (u <= 0.0) return 0.0;
    return std::erf(std::sqrt(lambda * u));
}

/// Record of the five decomposition densities bound to one (a, b) pair.
/// The (I_T, X_T) entry is evaluated at terminal value z = b and the H_I
/// entry at time u = b; the standalone functions above take the natural
/// arguments.
struct InfSupLaws {
    double joint_inf_sup;
    double inf_marginal;
    double ordered_joint;
    double inf_terminal_joint;
    double h_inf_time_density;
};

inline InfSupLaws inf_sup_laws(double lambda, double a, double b) {
    return {inf_sup_joint_density(lambda, a, b), inf_marginal_density(lambda, a),
            inf_sup_ordered_density(lambda, a, b), inf_terminal_joint_density(lambda, a, b),
            h_inf_density(lambda, b)};
}

// Conditional segment drawdown CDFs given H_I < H_S, I_T = a, S_T = b
// (Prop-type laws for the pre-H_I, (H_I, H_S) and post-H_S fragments).
// Each clamps to 0 below its support and to 1 at d >= b - a.

/// f1(d; a, b) = sinh((a+d)c) sinh((b-a)c) / (sinh(d c) sinh(b c)),
/// supported on -a < d < b - a.
inline double segment1_dminus_cdf(double lambda, double a, double b, double d) {
    require(lambda > 0.0, "segment laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "segment laws: requires a < 0 < b");
    if (d <= -a) return 0.0;
    if (d >= b - a) return 1.0;
    const double c = std::sqrt(2.0 * lambda);
    return std::exp(log_sinh((a + d) * c) + log_sinh((b - a) * c) - log_sinh(d * c) -
                    log_sinh(b * c));
}

/// f2(d; a, b) = (sinh((b-a)c)/sinh(d c)) exp(-(b-a-d) c coth(d c)),
/// supported on 0 < d < b - a.
inline double segment2_dminus_cdf(double lambda, double a, double b, double d) {
    require(lambda > 0.0, "segment laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "segment laws: requires a < 0 < b");
    if (d <= 0.0) return 0.0;
    if (d >= b - a) return 1.0;
    const double c = std::sqrt(2.0 * lambda);
    return std::exp(log_sinh((b - a) * c) - log_sinh(d * c) -
                    (b - a - d) * c * coth(d * c));
}

/// f3(d; a, b) = sinh((b-a)c)(cosh(d c)-1) / (sinh(d c)(cosh((b-a)c)-1)),
/// supported on 0 < d < b - a.
inline double segment3_dminus_cdf(double lambda, double a, double b, double d) {
    require(lambda > 0.0, "segment laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "segment laws: requires a < 0 < b");
    if (d <= 0.0) return 0.0;
    if (d >= b - a) return 1.0;
    const double c = std::sqrt(2.0 * lambda);
    const double x = (b - a) * c;
    return std::exp(log_sinh(x) + 2.0 * log_sinh(0.5 * d * c) - log_sinh(d * c) -
                    2.0 * log_sinh(0.5 * x));
}

struct SegmentCdfs {
    double f1, f2, f3;
};

inline SegmentCdfs segment_dminus_cdfs(double lambda, double a, double b, double d) {
    return {segment1_dminus_cdf(lambda, a, b, d), segment2_dminus_cdf(lambda, a, b, d),
            segment3_dminus_cdf(lambda, a, b, d)};
}

/// Density of the overshoot S_T - X_T given (S_T = b, I_T = a, H_I < H_S):
/// with L = b - a and c = sqrt(2 lambda),
///   f(x) = c sinh((L - x) c) / (cosh(L c) - 1)  on (0, L); 0 outside.
/// Equivalently X_T given the same conditioning has density proportional to
/// sinh((z - a) c) on (a, b), which is what the two-barrier Green function of
/// the killed post-supremum diffusion yields; composed with the ordered
/// (I_T, S_T) density this reconstructs the Laplace(c) law of X_T exactly.
/// The truncated-exponential variant (same mass, same L -> inf limit, same
/// midpoint value) fails that reconstruction and fails its own pivotal test
/// in simulation; it is kept below only as a negative control.
inline double overshoot_density(double lambda, double a, double b, double x) {
    require(lambda > 0.0, "overshoot laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "overshoot laws: requires a < 0 < b");
    const double L = b - a;
    if (x <= 0.0 || x >= L) return 0.0;
    const double c = std::sqrt(2.0 * lambda);
    // c sinh((L-x)c) / (2 sinh^2(Lc/2))
    return c * std::exp(log_sinh((L - x) * c) - std::numbers::ln2 -
                        2.0 * log_sinh(0.5 * L * c));
}

/// CDF of the overshoot; this is the pivotal transform used by the verify
/// suites: (cosh(L c) - cosh((L - x) c)) / (cosh(L c) - 1).
inline double overshoot_cdf(double lambda, double a, double b, double x) {
    require(lambda > 0.0, "overshoot laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "overshoot laws: requires a < 0 < b");
    const double L = b - a;
    if (x <= 0.0) return 0.0;
    if (x >= L) return 1.0;
    const double c = std::sqrt(2.0 * lambda);
    // (cosh(Lc) - cosh((L-x)c)) / (cosh(Lc) - 1), via the product form
    // cosh A - cosh B = 2 sinh((A+B)/2) sinh((A-B)/2)
    return std::exp(log_sinh(0.5 * (2.0 * L - x) * c) + log_sinh(0.5 * x * c) -
                    2.0 * log_sinh(0.5 * L * c));
}

/// The truncated-exponential form c e^{-x c} / (1 - e^{-L c}): shares the
/// total mass, the L -> inf limit and the midpoint value with the correct
/// density above, but is not the conditional law of the overshoot. Exposed
/// for the decomposition suite's negative control.
inline double overshoot_cdf_truncated_exponential(double lambda, double a, double b, double x) {
    require(lambda > 0.0, "overshoot laws: requires lambda > 0");
    require(a < 0.0 && b > 0.0, "overshoot laws: requires a < 0 < b");
    const double L = b - a;
    if (x <= 0.0) return 0.0;
    if (x >= L) return 1.0;
    const double c = std::sqrt(2.0 * lambda);
    return std::expm1(-x * c) / std::expm1(-L * c);
}

}  // namespace drawdown
