#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drawdown/decomposition_laws.hpp"
#include "drawdown/exp_time_laws.hpp"
#include "drawdown/fixed_time.hpp"
#include "drawdown/hitting_laws.hpp"
#include "drawdown/moments.hpp"
#include "drawdown/psi.hpp"
#include "drawdown/reduced_laws.hpp"
#include "drawdown/scale.hpp"

namespace drawdown {

/// Numeric parameters a formula may consume; `side` is carried separately.
struct FormulaArgs {
    std::map<std::string, double> num;
    std::string side = "increase";

    double get(const std::string& name) const {
        const auto it = num.find(name);
        if (it == num.end())
            throw std::invalid_argument("missing required parameter --" + name);
        return it->second;
    }
    double get_or(const std::string& name, double fallback) const {
        const auto it = num.find(name);
        return it == num.end() ? fallback : it->second;
    }
};

struct FormulaRow {
    std::string label;  // empty for single-valued formulas
    EvalResult result;
};

struct Formula {
    std::string name;
    std::vector<std::string> params;  // accepted numeric parameter names
    std::function<std::vector<FormulaRow>(const FormulaArgs&)> eval;
};

inline const std::vector<Formula>& formula_registry() {
    static const std::vector<Formula> reg = {
        {"scale", {"mu", "x"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{{"", eval_from_value(scale(a.get("mu"), a.get("x")))}};
         }},
        {"hit-before", {"mu", "x", "a", "b"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(hit_before(a.get("mu"), a.get("x"), a.get("a"), a.get("b")))}};
         }},
        {"psi", {"a", "nu", "lambda"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_log(psi_log(a.get("a"), a.get("nu"), a.get("lambda")))}};
         }},
        {"exp-time-marginal", {"lambda", "mu", "a"},
         [](const FormulaArgs& a) {
             const Side s = a.side == "decrease" ? Side::decrease : Side::increase;
             return std::vector<FormulaRow>{{"", eval_from_value(exp_time_marginal_survival(
                                                     a.get("lambda"), a.get("mu"), a.get("a"), s))}};
         }},
        {"hitting-dminus-cdf", {"mu", "beta", "u"},
         [](const FormulaArgs& a) {
             std::vector<FormulaRow> rows{
                 {"", eval_from_value(hitting_dminus_cdf(a.get("mu"), a.get("beta"), a.get("u")))}};
             const double mass = hitting_dminus_total_mass(a.get("mu"), a.get("beta"));
             if (mass < 1.0) rows.push_back({"total_mass", eval_from_value(mass)});
             return rows;
         }},
        {"hitting-dminus-constrained-cdf", {"mu", "alpha", "beta", "u"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(hitting_dminus_constrained_cdf(
                          a.get("mu"), a.get("alpha"), a.get("beta"), a.get("u")))}};
         }},
        {"hitting-joint-cdf", {"mu", "beta", "u", "v"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(hitting_joint_cdf(a.get("mu"), a.get("beta"), a.get("u"),
                                                        a.get("v")))}};
         }},
        {"bes3-dminus-cdf", {"mu", "beta", "u"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(bes3_dminus_cdf(a.get_or("mu", 0.0), a.get("beta"),
                                                      a.get("u")))}};
         }},
        {"exp-time-joint-cdf", {"lambda", "alpha", "beta"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(exp_time_joint_cdf(a.get("lambda"), a.get("alpha"),
                                                         a.get("beta")))}};
         }},
        {"exp-time-crossterm", {"lambda", "alpha", "beta"},
         [](const FormulaArgs& a) {
             const double lam = a.get("lambda"), al = a.get("alpha"), be = a.get("beta");
             return std::vector<FormulaRow>{
                 {"crossterm", eval_from_value(exp_time_crossterm(lam, al, be))},
                 {"joint_survival", eval_from_value(exp_time_joint_survival(lam, al, be))}};
         }},
        {"exp-time-joint-density", {"lambda", "alpha", "beta"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(exp_time_joint_density(a.get("lambda"), a.get("alpha"),
                                                             a.get("beta")))}};
         }},
        {"exp-time-ordered-laws", {"lambda", "alpha", "beta"},
         [](const FormulaArgs& a) {
             const auto r = exp_time_ordered_laws(a.get("lambda"), a.get("alpha"), a.get("beta"));
             return std::vector<FormulaRow>{
                 {"joint_cdf_ordered", eval_from_value(r.joint_cdf_ordered)},
                 {"dplus_density_ordered", eval_from_value(r.dplus_density_ordered)},
                 {"dplus_cdf_ordered", eval_from_value(r.dplus_cdf_ordered)},
                 {"dminus_cdf_ordered", eval_from_value(r.dminus_cdf_ordered)}};
         }},
        {"inf-sup-laws", {"lambda", "a", "b"},
         [](const FormulaArgs& a) {
             const auto r = inf_sup_laws(a.get("lambda"), a.get("a"), a.get("b"));
             return std::vector<FormulaRow>{
                 {"joint_inf_sup", eval_from_value(r.joint_inf_sup)},
                 {"inf_marginal", eval_from_value(r.inf_marginal)},
                 {"ordered_joint", eval_from_value(r.ordered_joint)},
                 {"inf_terminal_joint", eval_from_value(r.inf_terminal_joint)},
                 {"h_inf_time_density", eval_from_value(r.h_inf_time_density)}};
         }},
        {"segment-dminus-cdfs", {"lambda", "a", "b", "d"},
         [](const FormulaArgs& a) {
             const auto r = segment_dminus_cdfs(a.get("lambda"), a.get("a"), a.get("b"),
                                                a.get("d"));
             return std::vector<FormulaRow>{{"f1", eval_from_value(r.f1)},
                                            {"f2", eval_from_value(r.f2)},
                                            {"f3", eval_from_value(r.f3)}};
         }},
        {"overshoot-density", {"lambda", "a", "b", "x"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", eval_from_value(overshoot_density(a.get("lambda"), a.get("a"), a.get("b"),
                                                        a.get("x")))}};
         }},
        {"fixed-time-dminus-survival", {"t", "a", "tol"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{
                 {"", fixed_time_dminus_survival(a.get("t"), a.get("a"), a.get_or("tol", 1e-10))}};
         }},
        {"moments", {},
         [](const FormulaArgs&) {
             const auto m = moments_and_correlation();
             return std::vector<FormulaRow>{{"catalan", eval_from_value(m.catalan)},
                                            {"e_dplus", eval_from_value(m.e_dplus)},
                                            {"e_dplus_sq", eval_from_value(m.e_dplus_sq)},
                                            {"e_cross", eval_from_value(m.e_cross)},
                                            {"variance", eval_from_value(m.variance)},
                                            {"rho", eval_from_value(m.rho)}};
         }},
        {"dirichlet-beta", {"n"},
         [](const FormulaArgs& a) {
             const double n = a.get("n");
             require(n >= 1.0 && n == std::floor(n), "dirichlet-beta: n must be an integer >= 1");
             return std::vector<FormulaRow>{
                 {"", eval_from_value(dirichlet_beta(static_cast<int>(n)), 1e-14)}};
         }},
        {"dplus-moment", {"p"},
         [](const FormulaArgs& a) {
             return std::vector<FormulaRow>{{"", eval_from_value(dplus_moment(a.get("p")))}};
         }},
        {"reduced-xy-laws", {"x", "y"},
         [](const FormulaArgs& a) {
             const auto r = reduced_xy_laws(a.get("x"), a.get("y"));
             return std::vector<FormulaRow>{{"joint_density", eval_from_value(r.joint_density)},
                                            {"y_density", eval_from_value(r.y_density)},
                                            {"y_survival", eval_from_value(r.y_survival)}};
         }},
    };
    return reg;
}

inline const Formula* find_formula(const std::string& name) {
    for (const auto& f : formula_registry())
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace drawdown
