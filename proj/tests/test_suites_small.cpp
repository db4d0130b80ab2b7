#include <catch2/catch_amalgamated.hpp>

#include "drawdown/suites.hpp"

using namespace drawdown;

TEST_CASE("consistency suite: every identity holds") {
    const auto rep = consistency_suite({});
    for (const auto& c : rep.checks) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        CHECK(c.pass);
    }
    CHECK(rep.overall_pass());
}

TEST_CASE("formula suite at reduced scale: all checks pass, controls fail") {
    SuiteConfig sc;
    sc.paths = 1000;
    sc.dt = 1e-3;
    sc.lambda = 0.5;
    sc.seed = 20250809;
    const auto rep = formula_suite(sc);
    for (const auto& c : rep.checks) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        CHECK(c.pass);
    }
    for (const auto& c : rep.negative_controls) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        CHECK(c.pass);  // means: failed as expected
    }
    CHECK(rep.overall_pass());
}

TEST_CASE("decomposition suite at reduced scale") {
    SuiteConfig sc;
    sc.paths = 20000;
    sc.dt = 2e-4;
    sc.lambda = 0.5;
    sc.seed = 31415;
    const auto rep = decomposition_suite(sc);
    int fails = 0;
    for (const auto& c : rep.checks) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        if (!c.pass) ++fails;
    }
    CHECK(fails <= 1);
    CHECK(rep.checks.size() >= 15);
    for (const auto& c : rep.negative_controls) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        CHECK(c.pass);
    }
    CHECK(rep.overall_pass());
}

TEST_CASE("pivot residuals shrink when the grid is refined") {
    auto pivot_stat = [](double dt, std::int64_t n) {
        SuiteConfig sc;
        sc.paths = n;
        sc.dt = dt;
        sc.seed = 2718;
        const auto rep = decomposition_suite(sc);
        double worst = 0.0;
        for (const auto& c : rep.checks)
            if (c.name.rfind("pivot-", 0) == 0) worst = std::max(worst, c.statistic);
        return worst;
    };
    const double coarse = pivot_stat(2e-3, 12000);
    const double fine = pivot_stat(2.5e-4, 12000);
    CHECK(fine < coarse);  // noise floor ~0.02 sits well under the coarse bias
}

TEST_CASE("moment suite at reduced scale") {
    SuiteConfig sc;
    sc.paths = 4000;
    sc.dt = 2e-4;
    sc.t = 1.0;
    sc.seed = 1618;
    const auto rep = moment_suite(sc);
    for (const auto& c : rep.checks) {
        INFO(c.name << " stat=" << c.statistic << " thr=" << c.threshold);
        CHECK(c.pass);
    }
    for (const auto& c : rep.negative_controls) CHECK(c.pass);
    CHECK(rep.overall_pass());
}

TEST_CASE("suite reports are reproducible and worker-count invariant") {
    SuiteConfig sc;
    sc.paths = 2000;
    sc.dt = 5e-4;
    sc.seed = 5150;
    sc.threads = 1;
    const std::string a = moment_suite(sc).to_json().dump();
    sc.threads = 2;
    const std::string b = moment_suite(sc).to_json().dump();
    sc.threads = 0;
    const std::string c = moment_suite(sc).to_json().dump();
    CHECK(a == b);
    CHECK(a == c);

    sc.paths = 6000;  // enough for the chi-squared bins' expected-count floor
    sc.threads = 1;
    const std::string d1 = decomposition_suite(sc).to_json().dump();
    sc.threads = 2;
    const std::string d2 = decomposition_suite(sc).to_json().dump();
    CHECK(d1 == d2);
}

TEST_CASE("report JSON carries the fixed schema") {
    SuiteConfig sc;
    sc.paths = 1500;
    sc.dt = 1e-3;
    const auto j = moment_suite(sc).to_json();
    CHECK(j.contains("suite"));
    CHECK(j.contains("config"));
    CHECK(j["config"].contains("seed"));
    CHECK(j["config"].contains("paths"));
    CHECK(j["config"].contains("dt"));
    CHECK(j["config"].contains("lambda"));
    CHECK(j["config"].contains("mu"));
    CHECK(j["config"].contains("t"));
    CHECK(j.contains("checks"));
    CHECK(j.contains("negative_controls"));
    CHECK(j.contains("overall_pass"));
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("kind"));
        CHECK(c.contains("statistic"));
        CHECK(c.contains("threshold"));
        CHECK(c.contains("pass"));
    }
    // serialized reports never contain NaN/inf tokens
    const std::string s = j.dump();
    CHECK(s.find("nan") == std::string::npos);
    CHECK(s.find("inf") == std::string::npos);
}
