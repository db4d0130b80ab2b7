// drawdown: closed-form drawdown/drawup laws of drifted Brownian motion,
// a reproducible Monte Carlo path engine, and the statistical verification
// suites, behind one batch-style command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "drawdown/path_engine.hpp"
#include "drawdown/registry.hpp"
#include "drawdown/suites.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;

ordered_json json_number_or_null(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("DRAWDOWN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("DRAWDOWN_SEED must be a decimal 64-bit integer");
        }
    }
    return 42;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

struct GridAxis {
    std::string param;
    double start = 0.0, stop = 0.0;
    int count = 0;
    double at(int i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

GridAxis parse_grid(const std::string& spec) {
    // name=start:stop:count
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid spec must be name=start:stop:count");
    GridAxis g;
    g.param = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    const auto c1 = rest.find(':'), c2 = rest.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw std::invalid_argument("grid spec must be name=start:stop:count");
    g.start = std::stod(rest.substr(0, c1));
    g.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    g.count = std::stoi(rest.substr(c2 + 1));
    if (g.count < 1) throw std::invalid_argument("grid count must be >= 1");
    return g;
}

ordered_json args_echo(const drawdown::FormulaArgs& args) {
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : args.num) p[k] = v;
    if (!args.side.empty()) p["side"] = args.side;
    return p;
}

int cmd_eval(const std::string& name, const drawdown::FormulaArgs& args,
             const std::string& out_path) {
    const auto* f = drawdown::find_formula(name);
    if (f == nullptr) {
        std::cerr << "unknown formula '" << name << "'; valid names:\n";
        for (const auto& g : drawdown::formula_registry()) std::cerr << "  " << g.name << "\n";
        return kExitUsage;
    }
    const auto rows = f->eval(args);
    ordered_json j;
    j["formula"] = name;
    j["params"] = args_echo(args);
    if (rows.size() == 1 && rows[0].label.empty()) {
        j["value"] = json_number_or_null(rows[0].result.value);
        j["log_value"] = json_number_or_null(rows[0].result.log_value);
        j["abs_err_bound"] = rows[0].result.abs_err_bound;
    } else {
        j["results"] = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json e;
            e["label"] = r.label;
            e["value"] = json_number_or_null(r.result.value);
            e["log_value"] = json_number_or_null(r.result.log_value);
            e["abs_err_bound"] = r.result.abs_err_bound;
            j["results"].push_back(e);
        }
    }
    emit(j.dump(2) + "\n", out_path);
    return kExitPass;
}

int cmd_table(const std::string& name, drawdown::FormulaArgs args,
              const std::vector<std::string>& grid_specs, const std::string& format,
              const std::string& out_path) {
    const auto* f = drawdown::find_formula(name);
    if (f == nullptr) {
        std::cerr << "unknown formula '" << name << "'\n";
        return kExitUsage;
    }
    if (grid_specs.empty() || grid_specs.size() > 2) {
        std::cerr << "table needs one or two --grid axes\n";
        return kExitUsage;
    }
    std::vector<GridAxis> axes;
    for (const auto& s : grid_specs) {
        auto g = parse_grid(s);
        if (std::find(f->params.begin(), f->params.end(), g.param) == f->params.end()) {
            std::cerr << "formula '" << name << "' has no parameter '" << g.param << "'\n";
            return kExitUsage;
        }
        axes.push_back(g);
    }
    std::cerr << "config: " << args_echo(args).dump() << " grid:";
    for (const auto& g : axes)
        std::cerr << " " << g.param << "=" << g.start << ":" << g.stop << ":" << g.count;
    std::cerr << "\n";

    const GridAxis& ax0 = axes[0];
    const GridAxis* ax1 = axes.size() > 1 ? &axes[1] : nullptr;
    std::ostringstream os;
    ordered_json arr = ordered_json::array();
    char buf[160];
    if (format == "csv") {
        os << ax0.param;
        if (ax1 != nullptr) os << "," << ax1->param;
        os << ",value\n";
    }
    for (int i = 0; i < ax0.count; ++i) {
        for (int j = 0; j < (ax1 != nullptr ? ax1->count : 1); ++j) {
            args.num[ax0.param] = ax0.at(i);
            if (ax1 != nullptr) args.num[ax1->param] = ax1->at(j);
            const auto rows = f->eval(args);
            const double v = rows[0].result.value;
            if (format == "csv") {
                if (ax1 != nullptr)
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", ax0.at(i), ax1->at(j), v);
                else
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ax0.at(i), v);
                os << buf;
            } else {
                ordered_json e;
                e[ax0.param] = ax0.at(i);
                if (ax1 != nullptr) e[(*ax1).param] = ax1->at(j);
                e["value"] = json_number_or_null(v);
                arr.push_back(e);
            }
        }
    }
    emit(format == "csv" ? os.str() : arr.dump(2) + "\n", out_path);
    return kExitPass;
}

struct McFlags {
    std::int64_t paths = 1000;
    double dt = 1e-4;
    std::optional<std::uint64_t> seed;
    std::string horizon = "exponential";
    double t = 1.0;
    double lambda = 0.5;
    double mu = 0.0;
    int threads = 0;
};

int cmd_simulate(const McFlags& fl, const std::string& functional, double level,
                 const std::string& out_path) {
    drawdown::McConfig mc;
    mc.n_paths = fl.paths;
    mc.dt = fl.dt;
    mc.seed = resolve_seed(fl.seed);
    mc.mu = fl.mu;
    mc.threads = fl.threads;
    if (fl.horizon == "fixed")
        mc.horizon = drawdown::Horizon::fixed(fl.t);
    else if (fl.horizon == "exponential")
        mc.horizon = drawdown::Horizon::exponential(fl.lambda);
    else {
        std::cerr << "horizon must be 'fixed' or 'exponential'\n";
        return kExitUsage;
    }
    ordered_json echo;
    echo["paths"] = mc.n_paths;
    echo["dt"] = mc.dt;
    echo["seed"] = mc.seed;
    echo["horizon"] = fl.horizon;
    echo[fl.horizon == "fixed" ? "t" : "lambda"] = fl.horizon == "fixed" ? fl.t : fl.lambda;
    echo["mu"] = mc.mu;

    if (functional.empty()) {
        std::cerr << "config: " << echo.dump() << "\n";
        std::ostringstream os;
        drawdown::write_paths_csv(os, drawdown::sample_paths(mc));
        emit(os.str(), out_path);
        return kExitPass;
    }
    auto pick = [&]() -> std::function<double(const drawdown::PathStats&)> {
        if (functional == "mean-dplus") return [](const auto& p) { return p.d_plus; };
        if (functional == "mean-dminus") return [](const auto& p) { return p.d_minus; };
        if (functional == "mean-cross") return [](const auto& p) { return p.d_plus * p.d_minus; };
        if (functional == "prob-dplus-gt")
            return [level](const auto& p) { return p.d_plus > level ? 1.0 : 0.0; };
        if (functional == "prob-dminus-gt")
            return [level](const auto& p) { return p.d_minus > level ? 1.0 : 0.0; };
        throw std::invalid_argument(
            "unknown functional (mean-dplus, mean-dminus, mean-cross, prob-dplus-gt, "
            "prob-dminus-gt)");
    };
    const auto est = drawdown::run_ensemble(mc, pick());
    ordered_json j;
    j["config"] = echo;
    j["functional"] = functional;
    if (functional.rfind("prob-", 0) == 0) j["level"] = level;
    j["mean"] = est.mean;
    j["std_err"] = est.std_err;
    j["n"] = est.n;
    emit(j.dump(2) + "\n", out_path);
    return kExitPass;
}

int cmd_verify(const McFlags& fl, const std::string& suite, const std::string& out_path) {
    drawdown::SuiteConfig sc;
    sc.seed = resolve_seed(fl.seed);
    sc.paths = fl.paths;
    sc.dt = fl.dt;
    sc.lambda = fl.lambda;
    sc.mu = fl.mu;
    sc.t = fl.t;
    sc.threads = fl.threads;

    std::vector<drawdown::SuiteReport> reports;
    if (suite == "consistency" || suite == "all")
        reports.push_back(drawdown::consistency_suite(sc));
    if (suite == "formulas" || suite == "all") reports.push_back(drawdown::formula_suite(sc));
    if (suite == "decomposition" || suite == "all")
        reports.push_back(drawdown::decomposition_suite(sc));
    if (suite == "moments" || suite == "all") reports.push_back(drawdown::moment_suite(sc));
    if (reports.empty()) {
        std::cerr << "unknown suite '" << suite
                  << "' (moments | decomposition | formulas | consistency | all)\n";
        return kExitUsage;
    }
    ordered_json j = ordered_json::array();
    for (const auto& r : reports) j.push_back(r.to_json());
    emit((reports.size() == 1 ? j[0].dump(2) : j.dump(2)) + "\n", out_path);
    for (const auto& r : reports)
        if (!r.overall_pass()) return kExitStatFail;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drawdown/drawup laws of drifted Brownian motion: closed forms, Monte Carlo, "
                 "verification"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output to this path instead of stdout");

    // eval ------------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate one closed form");
    std::string formula;
    eval->add_option("formula", formula, "formula name")->required();
    drawdown::FormulaArgs args;
    const std::vector<std::string> numeric_flags = {"lambda", "mu", "alpha", "beta", "u",  "v",
                                                    "t",      "a",  "b",     "d",    "p",  "x",
                                                    "y",      "n",  "tol",   "nu"};
    std::map<std::string, std::optional<double>> flag_vals;
    for (const auto& nf : numeric_flags) {
        flag_vals[nf] = std::nullopt;
        eval->add_option("--" + nf, flag_vals[nf]);
    }
    eval->add_option("--side", args.side, "increase | decrease")->default_val("increase");

    // table -----------------------------------------------------------------
    auto* table = app.add_subcommand("table", "tabulate a formula over 1-2 grid axes");
    std::string tformula, tformat = "csv";
    std::vector<std::string> grids;
    table->add_option("formula", tformula)->required();
    table->add_option("--grid", grids, "axis as name=start:stop:count (repeatable, max 2)");
    table->add_option("--format", tformat, "csv | json")->default_val("csv");
    std::map<std::string, std::optional<double>> tflag_vals;
    for (const auto& nf : numeric_flags) {
        tflag_vals[nf] = std::nullopt;
        table->add_option("--" + nf, tflag_vals[nf]);
    }

    // simulate ----------------------------------------------------------------
    McFlags fl;
    auto add_mc_flags = [&](CLI::App* sub) {
        sub->add_option("--paths", fl.paths, "number of paths");
        sub->add_option("--dt", fl.dt, "time step");
        sub->add_option("--seed", fl.seed, "seed (flag > DRAWDOWN_SEED env > 42)");
        sub->add_option("--horizon", fl.horizon, "fixed | exponential");
        sub->add_option("--t", fl.t, "fixed horizon length");
        sub->add_option("--lambda", fl.lambda, "exponential horizon rate");
        sub->add_option("--mu", fl.mu, "drift");
        sub->add_option("--threads", fl.threads, "worker threads (0 = auto; never changes results)");
    };
    auto* sim = app.add_subcommand("simulate", "run the path engine");
    add_mc_flags(sim);
    std::string functional;
    double level = 1.0;
    sim->add_option("--functional", functional,
                    "aggregate statistic instead of the per-path CSV stream");
    sim->add_option("--a", level, "level for prob-* functionals");

    // verify ------------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    add_mc_flags(ver);
    std::string suite = "all";
    ver->add_option("--suite", suite, "moments | decomposition | formulas | consistency | all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (eval->parsed()) {
            for (const auto& [k, v] : flag_vals)
                if (v) args.num[k] = *v;
            return cmd_eval(formula, args, out_path);
        }
        if (table->parsed()) {
            drawdown::FormulaArgs targs;
            for (const auto& [k, v] : tflag_vals)
                if (v) targs.num[k] = *v;
            return cmd_table(tformula, targs, grids, tformat, out_path);
        }
        if (sim->parsed()) return cmd_simulate(fl, functional, level, out_path);
        if (ver->parsed()) return cmd_verify(fl, suite, out_path);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
