#include <catch2/catch_amalgamated.hpp>

#include "drawdown/rng.hpp"
#include "drawdown/stats_tests.hpp"

using namespace drawdown;

TEST_CASE("one-sample KS: samples at exactly i/n give statistic 1/n") {
    const int n = 1024;  // power of two keeps i/n exact in binary
    std::vector<double> s;
    for (int i = 1; i <= n; ++i) s.push_back(static_cast<double>(i) / n);
    const auto r = ks_one_sample(s, [](double x) { return x; });
    CHECK(r.statistic == Catch::Approx(1.0 / n).margin(1e-15));
    CHECK(r.pass);
}

TEST_CASE("one-sample KS: uniform grid against the x^2 CDF fails hard") {
    const int n = 10000;
    std::vector<double> s;
    for (int i = 0; i < n; ++i) s.push_back((i + 0.5) / n);
    const auto r = ks_one_sample(s, [](double x) { return x * x; });
    CHECK(r.statistic > 0.2);  // sup |x - x^2| = 1/4
    CHECK_FALSE(r.pass);
}

TEST_CASE("one-sample KS: inverse-transform draws from the tested CDF pass") {
    std::vector<double> s;
    rng::Stream g(61, 0, 0);
    for (int i = 0; i < 20000; ++i) s.push_back(-std::log(g.uniform()) / 0.7);
    const auto r = ks_one_sample(s, [](double x) { return -std::expm1(-0.7 * x); });
    CHECK(r.pass);
}

TEST_CASE("one-sample KS requires n >= 10 and honors censored tails") {
    CHECK_THROWS_AS(ks_one_sample({0.1, 0.2}, [](double x) { return x; }), std::domain_error);
    // 10% censored exponential sample: the finite part still matches
    std::vector<double> s;
    rng::Stream g(67, 0, 0);
    for (int i = 0; i < 5000; ++i) {
        const double v = -std::log(g.uniform());
        s.push_back(v > 2.3 ? kInf : v);  // censor the tail beyond 2.3
    }
    const auto r = ks_one_sample(s, [](double x) { return -std::expm1(-x); },
                                 kKolmogorov1pct, 0.0);
    CHECK(r.pass);  // censoring at the true law's tail does not distort the sup
}

TEST_CASE("two-sample KS on same-law and different-law pairs") {
    rng::Stream g(71, 0, 0);
    std::vector<double> a, b, c;
    for (int i = 0; i < 4000; ++i) {
        a.push_back(g.normal());
        b.push_back(g.normal());
        c.push_back(g.normal() + 0.3);
    }
    CHECK(ks_two_sample(a, b).pass);
    CHECK_FALSE(ks_two_sample(a, c).pass);
}

TEST_CASE("pivotal uniform check and its sensitivity") {
    rng::Stream g(73, 0, 0);
    std::vector<double> u, skew;
    for (int i = 0; i < 5000; ++i) {
        const double x = g.uniform();
        u.push_back(x);
        skew.push_back(x * x);
    }
    CHECK(pivotal_uniform_check(u).pass);
    CHECK_FALSE(pivotal_uniform_check(skew).pass);
}

TEST_CASE("sub-CDF deviation against a defective law") {
    // half the mass at Exp(1), the other half censored away entirely
    rng::Stream g(79, 0, 0);
    std::vector<double> vals;
    const std::int64_t n = 20000;
    for (std::int64_t i = 0; i < n; ++i)
        if (g.uniform() < 0.5) vals.push_back(-std::log(g.uniform()));
    const auto r = sup_deviation_subcdf(
        vals, n, [](double x) { return 0.5 * -std::expm1(-x); }, 0.5);
    CHECK(r.pass);
    const auto wrong = sup_deviation_subcdf(
        vals, n, [](double x) { return 0.8 * -std::expm1(-x); }, 0.8);
    CHECK_FALSE(wrong.pass);
}

TEST_CASE("pearson independence proxy") {
    rng::Stream g(83, 0, 0);
    std::vector<double> x, y, z;
    for (int i = 0; i < 5000; ++i) {
        const double a = g.normal(), b = g.normal();
        x.push_back(a);
        y.push_back(b);
        z.push_back(a + 0.4 * b);
    }
    CHECK(pearson_independence(x, y).pass);
    CHECK_FALSE(pearson_independence(x, z).pass);
}

TEST_CASE("rank-product independence proxy") {
    rng::Stream g(89, 0, 0);
    std::vector<double> x, y, z;
    for (int i = 0; i < 5000; ++i) {
        const double a = g.normal(), b = g.normal();
        x.push_back(a);
        y.push_back(b);
        z.push_back(a * (1.0 + 0.5 * std::fabs(b)));
    }
    CHECK(rank_product_independence(x, y).pass);
}

TEST_CASE("chi-squared goodness of fit") {
    // balanced multinomial from the generator itself
    rng::Stream g(97, 0, 0);
    std::vector<double> obs(16, 0.0), expd(16, 2500.0);
    for (int i = 0; i < 40000; ++i) obs[static_cast<std::size_t>(g.uniform() * 16.0)] += 1.0;
    const auto ok = chi_squared_gof(obs, expd);
    CHECK(ok.pass);
    CHECK(ok.dof == 15);
    // a biased table fails
    std::vector<double> bad = obs;
    bad[0] += 600.0;
    bad[7] -= 600.0;
    CHECK_FALSE(chi_squared_gof(bad, expd).pass);
    // the insufficient-count guard throws
    std::vector<double> tiny(16, 10.0);
    CHECK_THROWS_AS(chi_squared_gof(obs, tiny), std::runtime_error);
}
