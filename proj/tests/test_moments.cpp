#include <catch2/catch_amalgamated.hpp>

#include "drawdown/moments.hpp"
#include "drawdown/reduced_laws.hpp"
#include "oracle_values.hpp"

using namespace drawdown;

TEST_CASE("Dirichlet beta values") {
    CHECK(dirichlet_beta(1) == Catch::Approx(oracle::kBeta1).margin(1e-14));
    CHECK(dirichlet_beta(2) == Catch::Approx(oracle::kBeta2).margin(1e-14));
    CHECK(dirichlet_beta(3) == Catch::Approx(oracle::kBeta3).margin(1e-14));
    CHECK(dirichlet_beta_real(1.5) == Catch::Approx(0.86450265346120204).margin(1e-13));
    CHECK_THROWS_AS(dirichlet_beta(0), std::domain_error);
}

TEST_CASE("p-th moment of the unit-time drawup") {
    CHECK(dplus_moment(1.0) == Catch::Approx(std::sqrt(0.5 * std::numbers::pi)).margin(1e-12));
    CHECK(dplus_moment(2.0) == Catch::Approx(2.0 * dirichlet_beta(2)).margin(1e-12));
    CHECK(dplus_moment(1.5) == Catch::Approx(oracle::kDplusMoment_1p5).margin(1e-12));
    CHECK(dplus_moment(3.0) == Catch::Approx(oracle::kDplusMoment_3).margin(1e-11));
    CHECK_THROWS_AS(dplus_moment(0.99), std::domain_error);
}

TEST_CASE("moment record reproduces the printed constants") {
    const auto m = moments_and_correlation();
    CHECK(m.catalan == Catch::Approx(0.915966).margin(1e-6));
    CHECK(m.e_dplus == Catch::Approx(1.25331).margin(1e-4));
    CHECK(m.e_dplus_sq == Catch::Approx(1.83193).margin(1e-4));
    CHECK(m.e_cross == Catch::Approx(1.44564).margin(1e-4));
    CHECK(m.variance == Catch::Approx(0.26113).margin(1e-4));
    CHECK(m.rho == Catch::Approx(-0.47936).margin(1e-4));
    // and at full precision against the frozen references
    CHECK(m.e_dplus == Catch::Approx(oracle::kEDplus).margin(1e-14));
    CHECK(m.e_dplus_sq == Catch::Approx(oracle::kEDplusSq).margin(1e-13));
    CHECK(m.e_cross == Catch::Approx(oracle::kECross).margin(1e-13));
    CHECK(m.variance == Catch::Approx(oracle::kVarDplus).margin(1e-13));
    CHECK(m.rho == Catch::Approx(oracle::kRho).margin(1e-12));
}

TEST_CASE("reduced-variable laws") {
    CHECK(reduced_xy_joint_density(1.0, 2.0) ==
          Catch::Approx(oracle::kReducedJoint_1_2).epsilon(1e-14));
    CHECK(reduced_y_density(2.0) == Catch::Approx(oracle::kReducedY_2).epsilon(1e-14));
    CHECK(reduced_y_survival(1.0) == 1.0);
    CHECK(reduced_y_survival(2.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(reduced_xy_joint_density(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(reduced_xy_joint_density(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reduced_y_survival(0.9), std::domain_error);
    const auto r = reduced_xy_laws(1.0, 2.0);
    CHECK(r.joint_density == reduced_xy_joint_density(1.0, 2.0));
    CHECK(r.y_density == reduced_y_density(2.0));
    CHECK(r.y_survival == reduced_y_survival(2.0));
}
