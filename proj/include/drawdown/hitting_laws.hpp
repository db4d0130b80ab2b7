#pragma once

#include "drawdown/scale.hpp"

namespace drawdown {

/// P^mu_0(D-_{H_beta} < u) = exp(-beta / S^{-mu}(u)).
///
/// The S^{-mu} argument (rather than S^{mu}) is the form consistent with the
/// constrained law below at alpha -> inf, with the excursion intensity
/// n((m,inf)) = 1/S^{-mu}(m), and with simulation for mu != 0. For mu >= 0
/// the function increases to 1; for mu < 0 it increases to the sub-probability
/// mass exp(-2|mu| beta) = P^mu(H_beta < inf), see
/// `hitting_dminus_total_mass`.
inline double hitting_dminus_cdf(double mu, double beta, double u) {
    require(beta > 0.0, "hitting_dminus_cdf: requires beta > 0");
    require(u > 0.0, "hitting_dminus_cdf: requires u > 0");
    return std::exp(-beta / scale(-mu, u));
}

/// u -> inf limit of hitting_dminus_cdf; < 1 exactly when mu < 0 (the law is
/// then defective because H_beta = inf with positive probability).
inline double hitting_dminus_total_mass(double mu, double beta) {
    require(beta > 0.0, "hitting_dminus_total_mass: requires beta > 0");
    if (mu >= 0.0) return 1.0;
    return std::exp(2.0 * mu * beta);
}

/// P^mu_0(D-_{H_beta} < u, H_beta < H_{-alpha}); the three-case law, continuous
/// at u = alpha and u = alpha + beta.
inline double hitting_dminus_constrained_cdf(double mu, double alpha, double beta, double u) {
    require(alpha >= 0.0, "hitting_dminus_constrained_cdf: requires alpha >= 0");
    require(beta > 0.0, "hitting_dminus_constrained_cdf: requires beta > 0");
    require(u > 0.0, "hitting_dminus_constrained_cdf: requires u > 0");
    if (u <= alpha)
        return std::exp(-beta / scale(-mu, u));
    if (u >= alpha + beta)
        return scale(mu, alpha) / scale(mu, alpha + beta);
    return scale(mu, alpha) / scale(mu, u) * std::exp(-(beta + alpha - u) / scale(-mu, u));
}

/// Joint law at the hitting time, P^mu_0(D-_{H_beta} < u, D+_{H_beta} < v),
/// v >= beta, mu >= 0. Since D+_{H_beta} - beta < z iff H_beta < H_{-z}, this
/// is the constrained law at alpha = v - beta; for u >= v it reduces to the
/// D+ marginal S^mu(v - beta)/S^mu(v).
inline double hitting_joint_cdf(double mu, double beta, double u, double v) {
    require(mu >= 0.0, "hitting_joint_cdf: requires mu >= 0");
    require(beta > 0.0, "hitting_joint_cdf: requires beta > 0");
    require(u > 0.0, "hitting_joint_cdf: requires u > 0");
    require(v >= beta, "hitting_joint_cdf: requires v >= beta (D+ >= beta a.s.)");
    if (u <= v - beta)
        return std::exp(-beta / scale(-mu, u));
    if (u >= v)
        return scale(mu, v - beta) / scale(mu, v);
    return scale(mu, v - beta) / scale(mu, u) * std::exp(-(v - u) / scale(-mu, u));
}

/// BES(3, mu) from 0: Q^mu_0(D-_{H_beta} < u) for 0 < u <= beta,
///   (S^{-mu}(beta)/S^{-mu}(u)) exp( -(beta-u)/S^{-mu}(u) - 2 mu (beta-u) ).
inline double bes3_dminus_cdf(double mu, double beta, double u) {
    require(mu >= 0.0, "bes3_dminus_cdf: requires mu >= 0");
    require(beta > 0.0, "bes3_dminus_cdf: requires beta > 0");
    require(u > 0.0 && u <= beta, "bes3_dminus_cdf: u must lie in (0, beta]");
    if (u == beta) return 1.0;
    const double su = scale(-mu, u);
    return scale(-mu, beta) / su * std::exp(-(beta - u) / su - 2.0 * mu * (beta - u));
}

}  // namespace drawdown
