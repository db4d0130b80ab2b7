#pragma once

#include <array>

#include "drawdown/common.hpp"

namespace drawdown {

/// Dirichlet beta at real s > 0: sum_{k>=0} (-1)^k (2k+1)^{-s}, summed with
/// Euler-van Wijngaarden averaging of the partial sums (geometric convergence;
/// 64 terms leave the transform error far below 1e-14 for s >= 1).
inline double dirichlet_beta_real(double s) {
    require(s > 0.0, "dirichlet_beta: requires s > 0");
    constexpr int n = 64;
    std::array<double, n> row{};
    double partial = 0.0;
    for (int k = 0; k < n; ++k) {
        const double term = std::pow(2.0 * k + 1.0, -s);
        partial += (k % 2 == 0) ? term : -term;
        row[static_cast<std::size_t>(k)] = partial;
    }
    for (int m = 1; m < n; ++m)
        for (int i = 0; i < n - m; ++i)
            row[static_cast<std::size_t>(i)] =
                0.5 * (row[static_cast<std::size_t>(i)] + row[static_cast<std::size_t>(i + 1)]);
    return row[0];
}

/// beta(n) for integer n >= 1; beta(2) is Catalan's constant.
inline double dirichlet_beta(int n) {
    require(n >= 1, "dirichlet_beta: requires n >= 1");
    return dirichlet_beta_real(static_cast<double>(n));
}

/// E((D+_1)^p) = 2 p Gamma(p) beta(p) / (2^{p/2} Gamma((2+p)/2)), p >= 1.
inline double dplus_moment(double p) {
    require(p >= 1.0, "dplus_moment: requires p >= 1");
    return 2.0 * p * std::tgamma(p) * dirichlet_beta_real(p) /
           (std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (2.0 + p)));
}

/// Unit-time moments of (D+, D-) for standard BM and the t-free correlation
/// coefficient. All entries scale as E(D+_t) = e_dplus sqrt(t),
/// E((D+_t)^2) = e_dplus_sq t, E(D+_t D-_t) = e_cross t.
struct MomentRecord {
    double catalan;     // beta(2)
    double e_dplus;     // sqrt(pi/2)
    double e_dplus_sq;  // 2 beta(2)
    double e_cross;     // 2 beta(2) - 2 log 2 + 1
    double variance;    // e_dplus_sq - e_dplus^2
    double rho;         // (e_cross - e_dplus^2) / variance
};

inline MomentRecord moments_and_correlation() {
    const double b2 = dirichlet_beta(2);
    MomentRecord r;
    r.catalan = b2;
    r.e_dplus = std::sqrt(0.5 * std::numbers::pi);
    r.e_dplus_sq = 2.0 * b2;
    r.e_cross = 2.0 * b2 - 2.0 * std::numbers::ln2 + 1.0;
    r.variance = r.e_dplus_sq - r.e_dplus * r.e_dplus;
    r.rho = (r.e_cross - r.e_dplus * r.e_dplus) / r.variance;
    return r;
}

}  // namespace drawdown
