#include <catch2/catch_amalgamated.hpp>

#include "drawdown/hitting_engine.hpp"
#include "drawdown/hitting_laws.hpp"
#include "drawdown/stats_tests.hpp"
#include "drawdown/suites.hpp"

using namespace drawdown;

TEST_CASE("symmetric two-barrier experiment hits each side half the time") {
    HittingConfig hc;
    hc.mu = 0.0;
    hc.beta = 1.0;
    hc.alpha = 1.0;
    hc.dt = 1e-3;
    hc.seed = 101;
    hc.bridge_correction = true;
    const std::int64_t n = 100000;
    std::int64_t hits = 0;
    double mean_time = 0.0;
    for (std::int64_t p = 0; p < n; ++p) {
        const auto o = simulate_hitting(hc, static_cast<std::uint64_t>(p));
        hits += o.hit_target_first ? 1 : 0;
        mean_time += o.hit_time;
        CHECK_FALSE(o.censored);
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(0.25 / static_cast<double>(n));
    CHECK(std::fabs(frac - 0.5) < 3.0 * se);
    // expected exit time of the unit two-sided barrier is alpha * beta = 1
    CHECK(mean_time / static_cast<double>(n) == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("determinism and the step-cap guard") {
    HittingConfig hc;
    hc.mu = 0.0;
    hc.beta = 1.0;
    hc.alpha = 2.0;
    hc.dt = 1e-3;
    hc.seed = 5;
    const auto a = simulate_hitting(hc, 17);
    const auto b = simulate_hitting(hc, 17);
    CHECK(a.d_minus_at_hit == b.d_minus_at_hit);
    CHECK(a.hit_time == b.hit_time);

    // strongly negative drift, no floor: the cap fires as an error...
    HittingConfig div;
    div.mu = -2.0;
    div.beta = 5.0;
    div.dt = 1e-3;
    div.seed = 5;
    div.max_steps = 20000;
    CHECK_THROWS_AS(simulate_hitting(div, 0), std::runtime_error);
    // ...or as a censored outcome when requested
    div.censor_on_cap = true;
    const auto c = simulate_hitting(div, 0);
    CHECK(c.censored);
    CHECK_FALSE(c.hit_target_first);
}

TEST_CASE("drawdown-stop censors exactly at the requested level") {
    HittingConfig hc;
    hc.mu = 0.0;
    hc.beta = 30.0;  // effectively unreachable before the stop triggers
    hc.dt = 1e-3;
    hc.seed = 9;
    hc.dminus_stop = 0.8;
    for (int p = 0; p < 50; ++p) {
        const auto o = simulate_hitting(hc, static_cast<std::uint64_t>(p));
        if (o.censored) CHECK(o.d_minus_at_hit >= 0.8);
    }
}

TEST_CASE("target hits report the drawup capped at the barrier") {
    HittingConfig hc;
    hc.mu = 0.0;
    hc.beta = 1.0;
    hc.alpha = 3.0;
    hc.dt = 1e-3;
    hc.seed = 13;
    hc.bridge_correction = true;
    for (int p = 0; p < 300; ++p) {
        const auto o = simulate_hitting(hc, static_cast<std::uint64_t>(p));
        if (o.hit_target_first) {
            CHECK(o.d_plus_at_hit >= hc.beta);
            CHECK(o.d_plus_at_hit <= hc.beta + hc.alpha);
        } else {
            CHECK(o.d_minus_at_hit >= hc.alpha);
        }
    }
}

TEST_CASE("BES(3) rejection acceptance rate is near epsilon/beta") {
    Bes3Config bc;
    bc.mu = 0.0;
    bc.beta = 2.0;
    bc.dt = 1e-3;
    bc.seed = 31;
    bc.method = Bes3Method::rejection;
    bc.epsilon_frac = 1e-3;  // eps = 2e-3, expected rate 1e-3
    std::int64_t attempts = 0;
    const int n = 400;
    for (int p = 0; p < n; ++p) attempts += simulate_bes3_hitting(bc, p).attempts;
    const double rate = static_cast<double>(n) / static_cast<double>(attempts);
    // expected rate is eps/beta = epsilon_frac; ~5% relative error at n=400
    CHECK(rate == Catch::Approx(bc.epsilon_frac).epsilon(0.25));
}

TEST_CASE("both BES(3) methods match the closed form and each other") {
    Bes3Config bc;
    bc.mu = 0.0;
    bc.beta = 2.0;
    bc.dt = 5e-4;
    bc.seed = 41;
    const int n = 2500;
    std::vector<double> sde, rej;
    bc.method = Bes3Method::sde;
    for (int p = 0; p < n; ++p) sde.push_back(simulate_bes3_hitting(bc, p).d_minus_at_hit);
    bc.method = Bes3Method::rejection;
    bc.seed = 42;
    for (int p = 0; p < n; ++p) rej.push_back(simulate_bes3_hitting(bc, p).d_minus_at_hit);
    auto cdf = [](double u) {
        return u >= 2.0 ? 1.0 : (u <= 0.0 ? 0.0 : bes3_dminus_cdf(0.0, 2.0, u));
    };
    const double allow = cdf_allowance(bc.dt);
    CHECK(ks_one_sample(sde, cdf, kKolmogorov1pct, allow).pass);
    CHECK(ks_one_sample(rej, cdf, kKolmogorov1pct, allow).pass);
    CHECK(ks_two_sample(sde, rej, kKolmogorov1pct, allow).pass);
}

TEST_CASE("drifted BES(3) SDE tracks the drifted closed form") {
    Bes3Config bc;
    bc.mu = 0.5;
    bc.beta = 2.0;
    bc.dt = 5e-4;
    bc.seed = 51;
    bc.method = Bes3Method::sde;
    std::vector<double> v;
    for (int p = 0; p < 2000; ++p) v.push_back(simulate_bes3_hitting(bc, p).d_minus_at_hit);
    auto cdf = [](double u) {
        return u >= 2.0 ? 1.0 : (u <= 0.0 ? 0.0 : bes3_dminus_cdf(0.5, 2.0, u));
    };
    CHECK(ks_one_sample(v, cdf, kKolmogorov1pct, cdf_allowance(bc.dt)).pass);
}
