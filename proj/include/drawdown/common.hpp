#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace drawdown {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Result of evaluating a law. `value` is the plain double; `log_value` is
/// the natural log computed along a stable path (meaningful even when `value`
/// underflows); `abs_err_bound` is a truncation/quadrature bound where one
/// applies, 0 for closed forms evaluated exactly in double precision.
struct EvalResult {
    double value = 0.0;
    double log_value = -kInf;
    double abs_err_bound = 0.0;
};

inline EvalResult eval_from_value(double v, double err = 0.0) {
    return {v, v > 0 ? std::log(v) : -kInf, err};
}

inline EvalResult eval_from_log(double lv, double err = 0.0) {
    return {std::exp(lv), lv, err};
}

struct ModelParams {
    double mu = 0.0;  // drift per unit time
    double x0 = 0.0;  // start level; never enters any (D+,D-) law
};

struct KillingRate {
    double lambda;  // rate of the independent exponential horizon, > 0
};

struct HittingSpec {
    double beta;          // target level, > 0
    double alpha = kInf;  // floor depth, >= 0; +inf = no floor
};

inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// Hyperbolics in forms that stay finite for large arguments. The published
// formulas mix cosh/sinh ratios whose parts overflow near 710; everything
// downstream is built on these.

/// log(sinh x), x > 0.
inline double log_sinh(double x) {
    if (x > 19.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x));
}

/// log(cosh x).
inline double log_cosh(double x) {
    x = std::fabs(x);
    if (x > 19.0) return x - std::numbers::ln2 + std::log1p(std::exp(-2.0 * x));
    return std::log(std::cosh(x));
}

/// 1/cosh(x), never overflows.
inline double sech(double x) {
    x = std::fabs(x);
    const double e = std::exp(-x);
    return 2.0 * e / (1.0 + e * e);
}

/// coth(x), x != 0.
inline double coth(double x) { return 1.0 / std::tanh(x); }

/// cosh(x) - 1 without cancellation for small x.
inline double cosh_m1(double x) {
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
}

}  // namespace drawdown
