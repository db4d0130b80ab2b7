#pragma once

#include <cstdint>
#include <cstdio>

#include "drawdown/common.hpp"

namespace drawdown {

enum class HorizonKind { fixed, exponential };

struct Horizon {
    HorizonKind kind = HorizonKind::fixed;
    double value = 1.0;  // t for fixed, lambda for exponential

    static Horizon fixed(double t) { return {HorizonKind::fixed, t}; }
    static Horizon exponential(double lambda) { return {HorizonKind::exponential, lambda}; }

    double time_scale() const { return kind == HorizonKind::fixed ? value : 1.0 / value; }
};

struct McConfig {
    std::int64_t n_paths = 1;
    double dt = 1e-4;
    std::uint64_t seed = 42;
    Horizon horizon = Horizon::fixed(1.0);
    double mu = 0.0;
    bool bridge_correction = false;
    int threads = 0;  // 0 = hardware concurrency; never affects results

    void validate() const {
        require(n_paths >= 1, "McConfig: requires n_paths >= 1");
        require(dt > 0.0, "McConfig: requires dt > 0");
        require(horizon.value > 0.0, "McConfig: requires positive horizon parameter");
        if (dt > horizon.time_scale() / 100.0)
            std::fprintf(stderr,
                         "warning: dt = %g exceeds horizon scale / 100 = %g; "
                         "discretization bias will be coarse\n",
                         dt, horizon.time_scale() / 100.0);
    }
};

/// Per-path summary of one simulated trajectory on [0, T].
struct PathStats {
    double d_plus = 0.0;   // max increase sup_{u<=v} (X_v - X_u)
    double d_minus = 0.0;  // max decrease sup_{u<=v} (X_u - X_v)
    double inf = 0.0;      // I_T
    double sup = 0.0;      // S_T
    double h_inf = 0.0;    // first time the final infimum is attained
    double h_sup = 0.0;    // first time the final supremum is attained
    double x_T = 0.0;      // terminal value
    double T = 0.0;        // horizon actually simulated
    bool inf_first = true; // H_I < H_S (ties toward true)
};

/// PathStats plus the drawdowns of the three fragments split at the two
/// extreme times (first extreme, then second). On {inf_first} these are the
/// pre-H_I, (H_I, H_S) and post-H_S drawdowns of the decomposition laws.
/// d_pre_ddown / d_post_dup are the drawdown of [0, H_I] and the drawup of
/// [H_I, T] for every path (the reversed post-H_I segment's drawdown equals
/// the post segment's drawup).
struct DecompStats {
    PathStats path;
    double d_seg1 = 0.0;
    double d_seg2 = 0.0;
    double d_seg3 = 0.0;
    double d_pre_ddown = 0.0;
    double d_post_dup = 0.0;
};

/// Outcome of a barrier experiment run to the first crossing.
struct HittingOutcome {
    bool hit_target_first = false;  // crossed beta before the floor
    double d_minus_at_hit = 0.0;
    double d_plus_at_hit = 0.0;
    double hit_time = 0.0;
    bool censored = false;  // stopped by a cap before any crossing
};

struct EstimateWithCI {
    double mean = 0.0;
    double std_err = 0.0;
    std::int64_t n = 0;
};

}  // namespace drawdown
