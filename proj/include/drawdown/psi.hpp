#pragma once

#include "drawdown/common.hpp"

namespace drawdown {

/// log of psi_lambda(a; nu) = e^{-nu a} ( cosh(a k) + (nu/k) sinh(a k) ),
/// k = sqrt(2 lambda + nu^2). Written as
///   -nu a + a k + log( (1 + nu/k)/2 + (1 - nu/k) e^{-2 a k}/2 )
/// so it stays finite for a k far beyond the overflow point of cosh.
/// Note 2 lambda > 0 implies |nu| < k, so both parenthesised weights are
/// positive.
inline double psi_log(double a, double nu, double lambda) {
    require(a >= 0.0, "psi: requires a >= 0");
    require(lambda > 0.0, "psi: requires lambda > 0");
    if (a == 0.0) return 0.0;
    const double k = std::sqrt(2.0 * lambda + nu * nu);
    const double r = nu / k;
    const double e2 = std::exp(-2.0 * a * k);
    return (k - nu) * a + std::log(0.5 * (1.0 + r) + 0.5 * (1.0 - r) * e2);
}

/// psi_lambda(a; nu); overflows to +inf for a k > ~710 (use psi_log there).
inline double psi(double a, double nu, double lambda) {
    require(a >= 0.0, "psi: requires a >= 0");
    require(lambda > 0.0, "psi: requires lambda > 0");
    const double k = std::sqrt(2.0 * lambda + nu * nu);
    const double ak = a * k;
    if (ak > 700.0) return std::exp(psi_log(a, nu, lambda));
    return std::exp(-nu * a) * (std::cosh(ak) + (nu / k) * std::sinh(ak));
}

enum class Side { increase, decrease };

/// Marginal survival at an independent Exp(lambda) time T:
///   P^mu(D+_T > a) = 1/psi_lambda(a; mu),
///   P^mu(D-_T > a) = 1/psi_lambda(a; -mu).
inline double exp_time_marginal_survival(double lambda, double mu, double a, Side side) {
    require(a >= 0.0, "exp_time_marginal_survival: requires a >= 0");
    const double nu = (side == Side::increase) ? mu : -mu;
    return std::exp(-psi_log(a, nu, lambda));
}

}  // namespace drawdown
