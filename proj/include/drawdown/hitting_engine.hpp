#pragma once

#include <cstdint>
#include <stdexcept>

#include "drawdown/mc.hpp"
#include "drawdown/rng.hpp"

namespace drawdown {

struct HittingConfig {
    double mu = 0.0;
    double beta = 1.0;    // upper target level, > 0
    double alpha = kInf;  // floor depth (lower barrier at -alpha); +inf = none
    double dt = 1e-4;
    std::uint64_t seed = 42;
    bool bridge_correction = false;
    // Optional early stop: once the running drawdown reaches this value every
    // event {D- < u}, u <= dminus_stop is decided, so the path can be cut and
    // reported censored. +inf disables.
    double dminus_stop = kInf;
    std::int64_t max_steps = 1000000000;  // guard against divergent experiments
    bool censor_on_cap = false;           // return censored instead of throwing

    void validate() const {
        require(beta > 0.0, "HittingConfig: requires beta > 0");
        require(alpha > 0.0, "HittingConfig: requires alpha > 0 (or +inf for none)");
        require(dt > 0.0, "HittingConfig: requires dt > 0");
    }
};

/// Run one drifted-BM path from 0 until it crosses beta or -alpha. Crossings
/// are detected at grid points; with bridge_correction a between-grid crossing
/// is sampled with the Brownian-bridge probability exp(-2 d1 d2 / h). The
/// drawdown/drawup are those accumulated strictly before the hit, with the
/// barrier level itself as the final point.
inline HittingOutcome simulate_hitting(const HittingConfig& cfg, std::uint64_t path_index) {
    cfg.validate();
    rng::Stream inc(cfg.seed, path_index, rng::kStreamIncrements);
    rng::Stream bridge_up(cfg.seed, path_index, rng::kStreamBridgeUp);
    rng::Stream bridge_dn(cfg.seed, path_index, rng::kStreamBridgeDown);

    const double h = cfg.dt;
    const double sh = std::sqrt(h);
    const bool has_floor = std::isfinite(cfg.alpha);
    const double floor_lv = -cfg.alpha;

    HittingOutcome out;
    double x = 0.0, run_min = 0.0, run_max = 0.0, d_plus = 0.0, d_minus = 0.0;
    for (std::int64_t i = 1;; ++i) {
        if (i > cfg.max_steps) {
            if (cfg.censor_on_cap) {
                out.censored = true;
                out.d_minus_at_hit = d_minus;
                out.d_plus_at_hit = d_plus;
                out.hit_time = static_cast<double>(cfg.max_steps) * h;
                return out;
            }
            throw std::runtime_error(
                "simulate_hitting: step cap reached, experiment looks divergent");
        }
        const double xn = x + cfg.mu * h + sh * inc.normal();
        bool up = xn >= cfg.beta;
        bool dn = has_floor && xn <= floor_lv;
        if (!up && !dn && cfg.bridge_correction) {
            // crossing probabilities below exp(-36) are skipped without
            // drawing; at most ~1e-16 per step of unaccounted mass
            const double pu_exp = 2.0 * (cfg.beta - x) * (cfg.beta - xn) / h;
            if (pu_exp < 36.0) up = bridge_up.uniform() < std::exp(-pu_exp);
            if (has_floor) {
                const double pd_exp = 2.0 * (x - floor_lv) * (xn - floor_lv) / h;
                if (pd_exp < 36.0) dn = bridge_dn.uniform() < std::exp(-pd_exp);
            }
        }
        if (up && dn) {
            // both barriers crossed within one step; attribute to the nearer one
            if (cfg.beta - x <= x - floor_lv)
                dn = false;
            else
                up = false;
        }
        if (up) {
            if (cfg.beta - run_min > d_plus) d_plus = cfg.beta - run_min;
            out.hit_target_first = true;
            out.d_minus_at_hit = d_minus;
            out.d_plus_at_hit = d_plus;
            out.hit_time = static_cast<double>(i) * h;
            return out;
        }
        if (dn) {
            if (run_max - floor_lv > d_minus) d_minus = run_max - floor_lv;
            out.hit_target_first = false;
            out.d_minus_at_hit = d_minus;
            out.d_plus_at_hit = d_plus;
            out.hit_time = static_cast<double>(i) * h;
            return out;
        }
        x = xn;
        if (x < run_min) run_min = x;
        if (x > run_max) run_max = x;
        if (x - run_min > d_plus) d_plus = x - run_min;
        if (run_max - x > d_minus) d_minus = run_max - x;
        if (d_minus >= cfg.dminus_stop) {
            out.censored = true;
            out.d_minus_at_hit = d_minus;
            out.d_plus_at_hit = d_plus;
            out.hit_time = static_cast<double>(i) * h;
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// BES(3, mu) stopped at the first hitting of beta, started at eps close to 0.

enum class Bes3Method { sde, rejection };

struct Bes3Config {
    double mu = 0.0;  // >= 0
    double beta = 2.0;
    double dt = 1e-4;
    std::uint64_t seed = 42;
    Bes3Method method = Bes3Method::sde;
    double epsilon_frac = 1e-4;  // start level as a fraction of beta

    void validate() const {
        require(mu >= 0.0, "Bes3Config: requires mu >= 0");
        require(beta > 0.0, "Bes3Config: requires beta > 0");
        require(dt > 0.0, "Bes3Config: requires dt > 0");
        require(epsilon_frac > 0.0 && epsilon_frac < 1.0,
                "Bes3Config: requires 0 < epsilon_frac < 1");
    }
};

struct Bes3Outcome {
    double d_minus_at_hit = 0.0;
    double hit_time = 0.0;
    std::int64_t attempts = 1;  // rejection only: Bernoulli trials until accept
};

namespace detail {

inline double bes3_drift(double mu, double x) {
    if (mu == 0.0) return 1.0 / x;
    // mu coth(mu x) -> 1/x as mu x -> 0
    const double p = mu * x;
    if (p < 1e-8) return 1.0 / x + mu * p / 3.0;
    return mu / std::tanh(p);
}

inline Bes3Outcome bes3_sde(const Bes3Config& cfg, std::uint64_t path_index) {
    rng::Stream sub(cfg.seed, path_index, rng::kStreamSubcycle);
    const double eps = cfg.epsilon_frac * cfg.beta;
    const double guard = 2.0 * std::sqrt(cfg.dt);
    double x = eps, run_max = eps, d_minus = 0.0, t = 0.0;
    while (true) {
        // one macro step of dt, sub-cycled while x sits under the step-size
        // guard so the singular drift is resolved
        double remaining = cfg.dt;
        while (remaining > 0.0) {
            double hs = remaining;
            if (x < guard) hs = std::min(remaining, std::max(0.25 * x * x, cfg.dt * 1e-8));
            x += detail::bes3_drift(cfg.mu, x) * hs + std::sqrt(hs) * sub.normal();
            if (x <= 0.0) x = -x;  // reflect; 0 is an entrance boundary
            remaining -= hs;
        }
        t += cfg.dt;
        if (x >= cfg.beta) {
            if (run_max - cfg.beta > d_minus) d_minus = run_max - cfg.beta;
            return {d_minus, t, 1};
        }
        if (x > run_max) run_max = x;
        if (run_max - x > d_minus) d_minus = run_max - x;
    }
}

inline Bes3Outcome bes3_rejection(const Bes3Config& cfg, std::uint64_t path_index) {
    rng::Stream inc(cfg.seed, path_index, rng::kStreamIncrements);
    rng::Stream bridge(cfg.seed, path_index, rng::kStreamBridgeUp);
    const double eps = cfg.epsilon_frac * cfg.beta;
    const double h = cfg.dt, sh = std::sqrt(h);
    for (std::int64_t attempt = 1;; ++attempt) {
        double x = eps, run_max = eps, d_minus = 0.0;
        std::int64_t i = 0;
        for (;;) {
            ++i;
            const double xn = x + cfg.mu * h + sh * inc.normal();
            if (xn <= 0.0) break;  // hit the origin: reject this attempt
            if (xn >= cfg.beta) {
                if (run_max - cfg.beta > d_minus) d_minus = run_max - cfg.beta;
                return {d_minus, static_cast<double>(i) * h, attempt};
            }
            // Brownian-bridge crossing of either absorbing level (draws
            // skipped when the crossing probability is below exp(-36))
            const double p0_exp = 2.0 * x * xn / h;
            const double pb_exp = 2.0 * (cfg.beta - x) * (cfg.beta - xn) / h;
            const bool cross0 = p0_exp < 36.0 && bridge.uniform() < std::exp(-p0_exp);
            const bool crossb = pb_exp < 36.0 && bridge.uniform() < std::exp(-pb_exp);
            if (cross0 && (!crossb || x <= cfg.beta - x)) break;
            if (crossb) {
                if (run_max - cfg.beta > d_minus) d_minus = run_max - cfg.beta;
                return {d_minus, static_cast<double>(i) * h, attempt};
            }
            x = xn;
            if (x > run_max) run_max = x;
            if (run_max - x > d_minus) d_minus = run_max - x;
        }
    }
}

}  // namespace detail

/// D-_{H_beta} for BES(3, mu) from (near) 0, by Euler-Maruyama on the
/// singular-drift SDE or by rejection of drifted-BM paths on {hit beta
/// before 0}; the two methods share the same O(eps) start bias and are
/// two-sample comparable.
inline Bes3Outcome simulate_bes3_hitting(const Bes3Config& cfg, std::uint64_t path_index) {
    cfg.validate();
    return cfg.method == Bes3Method::sde ? detail::bes3_sde(cfg, path_index)
                                         : detail::bes3_rejection(cfg, path_index);
}

}  // namespace drawdown
