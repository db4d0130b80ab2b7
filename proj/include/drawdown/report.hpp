#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "drawdown/common.hpp"

namespace drawdown {

/// One verification check. `kind` is one of ks | moment | identity | chi2 |
/// count. For negative controls `pass` means "failed as expected".
struct CheckResult {
    std::string name;
    std::string kind;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double observed = kNaN;  // optional: estimate behind a moment check
    double expected = kNaN;  // optional: its analytic target
};

struct SuiteReport {
    std::string suite;
    nlohmann::ordered_json config;  // fully-resolved config echo
    std::vector<CheckResult> checks;
    std::vector<CheckResult> negative_controls;
    int max_allowed_failures = 0;

    int failures() const {
        int f = 0;
        for (const auto& c : checks)
            if (!c.pass) ++f;
        return f;
    }
    bool controls_ok() const {
        for (const auto& c : negative_controls)
            if (!c.pass) return false;
        return true;
    }
    bool overall_pass() const { return failures() <= max_allowed_failures && controls_ok(); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["config"] = config;
        j["max_allowed_failures"] = max_allowed_failures;
        auto check_json = [](const CheckResult& c, bool control) {
            nlohmann::ordered_json e;
            e["name"] = c.name;
            e["kind"] = c.kind;
            e["statistic"] = c.statistic;
            e["threshold"] = c.threshold;
            e[control ? "failed_as_expected" : "pass"] = c.pass;
            e["observed"] = std::isfinite(c.observed) ? nlohmann::ordered_json(c.observed)
                                                      : nlohmann::ordered_json(nullptr);
            e["expected"] = std::isfinite(c.expected) ? nlohmann::ordered_json(c.expected)
                                                      : nlohmann::ordered_json(nullptr);
            return e;
        };
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) j["checks"].push_back(check_json(c, false));
        j["negative_controls"] = nlohmann::ordered_json::array();
        for (const auto& c : negative_controls) j["negative_controls"].push_back(check_json(c, true));
        j["failures"] = failures();
        j["overall_pass"] = overall_pass();
        return j;
    }
};

}  // namespace drawdown
