#include <catch2/catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "drawdown/decomposition_laws.hpp"
#include "drawdown/rng.hpp"
#include "oracle_values.hpp"

using namespace drawdown;

namespace {
template <class F>
double quad(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-10);
}
}  // namespace

TEST_CASE("inf/sup density values") {
    CHECK(inf_sup_joint_density(0.5, -1.0, 1.0) ==
          Catch::Approx(oracle::kJoint1_m1_1).epsilon(1e-14));
    CHECK(inf_sup_ordered_density(0.5, -1.0, 1.0) ==
          Catch::Approx(oracle::kHit2_m1_1).epsilon(1e-13));
    CHECK_THROWS_AS(inf_sup_joint_density(0.5, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(inf_sup_joint_density(0.5, -1.0, -0.5), std::domain_error);
}

TEST_CASE("inf/sup joint density reflection symmetry") {
    rng::Stream s(53, 0, 0);
    for (int i = 0; i < 200; ++i) {
        const double lam = 2.0 * s.uniform() + 0.05;
        const double a = -3.0 * s.uniform() - 1e-3;
        const double b = 3.0 * s.uniform() + 1e-3;
        CHECK(inf_sup_joint_density(lam, a, b) ==
              Catch::Approx(inf_sup_joint_density(lam, -b, -a)).epsilon(1e-12));
    }
}

TEST_CASE("inf marginal integrates to one") {
    const double lam = 0.8;
    const double mass = quad([&](double a) { return inf_marginal_density(lam, a); }, -40.0, 0.0);
    CHECK(mass == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("terminal joint density marginalizes to the inf marginal") {
    const double lam = 0.5;
    for (double a : {-0.4, -1.3}) {
        const double m =
            quad([&](double z) { return inf_terminal_joint_density(lam, a, z); }, a, 50.0);
        CHECK(m == Catch::Approx(inf_marginal_density(lam, a)).epsilon(1e-9));
    }
}

TEST_CASE("H_I gamma law density and CDF") {
    CHECK(h_inf_cdf(0.5, 1.0) == Catch::Approx(oracle::kHInfCdf_half_1).epsilon(1e-14));
    const double lam = 0.5;
    // substitute u = w^2 to soak up the 1/sqrt(u) endpoint singularity
    auto cdf_quad = [&](double u) {
        return quad([&](double w) { return 2.0 * w * h_inf_density(lam, w * w); }, 0.0,
                    std::sqrt(u));
    };
    CHECK(cdf_quad(200.0) == Catch::Approx(1.0).epsilon(1e-8));
    for (double u : {0.3, 1.0, 4.0})
        CHECK(cdf_quad(u) == Catch::Approx(h_inf_cdf(lam, u)).epsilon(1e-8));
}

TEST_CASE("segment CDF values, clamps and support") {
    CHECK(segment1_dminus_cdf(0.5, -1.0, 1.0, 1.5) == Catch::Approx(oracle::kF1_15).epsilon(1e-13));
    CHECK(segment2_dminus_cdf(0.5, -1.0, 1.0, 1.0) == Catch::Approx(oracle::kF2_1).epsilon(1e-13));
    CHECK(segment3_dminus_cdf(0.5, -1.0, 1.0, 1.0) == Catch::Approx(oracle::kF3_1).epsilon(1e-13));
    // f1 vanishes at and below d = -a, all reach 1 at d = b - a
    CHECK(segment1_dminus_cdf(0.5, -1.0, 1.0, 1.0) == 0.0);
    CHECK(segment1_dminus_cdf(0.5, -1.0, 1.0, 0.2) == 0.0);
    CHECK(segment1_dminus_cdf(0.5, -1.0, 1.0, 2.0) == 1.0);
    CHECK(segment2_dminus_cdf(0.5, -1.0, 1.0, -0.1) == 0.0);
    CHECK(segment2_dminus_cdf(0.5, -1.0, 1.0, 2.0) == 1.0);
    CHECK(segment3_dminus_cdf(0.5, -1.0, 1.0, 2.0) == 1.0);
    // approach from below: continuity into the clamp
    CHECK(segment2_dminus_cdf(0.5, -1.0, 1.0, 2.0 - 1e-9) == Catch::Approx(1.0).margin(1e-7));
    CHECK(segment3_dminus_cdf(0.5, -1.0, 1.0, 2.0 - 1e-9) == Catch::Approx(1.0).margin(1e-7));
    CHECK(segment1_dminus_cdf(0.5, -1.0, 1.0, 2.0 - 1e-9) == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("segment CDFs are nondecreasing and in [0,1]") {
    rng::Stream s(59, 0, 0);
    for (int i = 0; i < 100; ++i) {
        const double lam = 2.0 * s.uniform() + 0.05;
        const double a = -2.0 * s.uniform() - 0.05;
        const double b = 2.0 * s.uniform() + 0.05;
        double p1 = 0.0, p2 = 0.0, p3 = 0.0;
        for (double d = 0.01; d < b - a + 0.3; d += 0.01) {
            const auto f = segment_dminus_cdfs(lam, a, b, d);
            CHECK(f.f1 >= p1 - 1e-12);
            CHECK(f.f2 >= p2 - 1e-12);
            CHECK(f.f3 >= p3 - 1e-12);
            CHECK(f.f1 <= 1.0);
            CHECK(f.f2 <= 1.0);
            CHECK(f.f3 <= 1.0);
            p1 = f.f1;
            p2 = f.f2;
            p3 = f.f3;
        }
    }
}

TEST_CASE("overshoot density: support, mass, limits, midpoint value") {
    const double lam = 0.5, a = -0.5, b = 0.5;
    CHECK(overshoot_density(lam, a, b, -0.1) == 0.0);
    CHECK(overshoot_density(lam, a, b, 1.2) == 0.0);
    CHECK(overshoot_density(lam, a, b, 0.5) == Catch::Approx(oracle::kOvershootMid).epsilon(1e-13));
    const double mass = quad([&](double x) { return overshoot_density(lam, a, b, x); }, 0.0, b - a);
    CHECK(mass == Catch::Approx(1.0).epsilon(1e-9));
    // CDF matches the integrated density
    for (double x : {0.2, 0.5, 0.8})
        CHECK(quad([&](double y) { return overshoot_density(lam, a, b, y); }, 0.0, x) ==
              Catch::Approx(overshoot_cdf(lam, a, b, x)).epsilon(1e-9));
    // wide-interval limit approaches the plain exponential density
    const double c = std::sqrt(2.0 * lam);
    CHECK(overshoot_density(lam, -20.0, 20.0, 1.0) ==
          Catch::Approx(c * std::exp(-c)).epsilon(1e-8));
    // the truncated-exponential variant shares mass and midpoint
    CHECK(overshoot_cdf_truncated_exponential(lam, a, b, b - a) == 1.0);
}

TEST_CASE("overshoot law composed with the ordered inf/sup density rebuilds the Laplace terminal law") {
    // P(X_T in dz) must come out as (c/2) e^{-|z| c}; this is the identity
    // that discriminates the sinh-form overshoot law from the
    // truncated-exponential variant.
    const double lam = 0.5;
    const double c = std::sqrt(2.0 * lam);
    auto half = [&](double z) {
        return quad(
            [&](double b) {
                return quad(
                    [&](double a) {
                        return inf_sup_ordered_density(lam, a, b) *
                               overshoot_density(lam, a, b, b - z);
                    },
                    -25.0, std::min(z, 0.0));
            },
            std::max(z, 0.0), 25.0);
    };
    for (double z : {-1.0, 0.4, 1.2}) {
        const double dens = half(z) + half(-z);
        CHECK(dens == Catch::Approx(0.5 * c * std::exp(-std::fabs(z) * c)).epsilon(2e-5));
    }
}

TEST_CASE("inf_sup_laws record bundles the five densities") {
    const double lam = 0.5, a = -1.0, b = 1.0;
    const auto r = inf_sup_laws(lam, a, b);
    CHECK(r.joint_inf_sup == inf_sup_joint_density(lam, a, b));
    CHECK(r.inf_marginal == inf_marginal_density(lam, a));
    CHECK(r.ordered_joint == inf_sup_ordered_density(lam, a, b));
    CHECK(r.inf_terminal_joint == inf_terminal_joint_density(lam, a, b));
    CHECK(r.h_inf_time_density == h_inf_density(lam, b));
}
