#pragma once

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>
#include <vector>

#include "drawdown/mc.hpp"
#include "drawdown/rng.hpp"

namespace drawdown {

namespace detail {

inline double draw_horizon(const McConfig& cfg, std::uint64_t path_index) {
    if (cfg.horizon.kind == HorizonKind::fixed) return cfg.horizon.value;
    rng::Stream s(cfg.seed, path_index, rng::kStreamScalars);
    return s.exponential(cfg.horizon.value);
}

// Grid layout over [0, T]: full steps of dt plus one final partial step so
// the endpoint lands exactly on T.
struct Grid {
    std::int64_t n_full;
    double last;  // length of the final step, 0 if T is a multiple of dt

    static Grid over(double T, double dt) {
        auto n = static_cast<std::int64_t>(std::floor(T / dt));
        double last = T - static_cast<double>(n) * dt;
        if (last <= 0.0) {
            last = 0.0;
        }
        return {n, last};
    }
    std::int64_t n_steps() const { return n_full + (last > 0.0 ? 1 : 0); }
    double time_at(std::int64_t i, double dt, double T) const {
        return i <= n_full ? static_cast<double>(i) * dt : T;
    }
};

}  // namespace detail

/// Simulate one drifted-BM path on the uniform grid and reduce it online to
/// PathStats. Pure function of (cfg.seed, path_index); extremes and their
/// first-attainment times use strict comparisons, so ties resolve to the
/// earliest grid index.
inline PathStats simulate_path(const McConfig& cfg, std::uint64_t path_index) {
    const double T = detail::draw_horizon(cfg, path_index);
    const auto grid = detail::Grid::over(T, cfg.dt);
    rng::Stream inc(cfg.seed, path_index, rng::kStreamIncrements);

    PathStats st;
    st.T = T;
    const double sdt = std::sqrt(cfg.dt);
    double x = 0.0, run_min = 0.0, run_max = 0.0;
    const std::int64_t n = grid.n_steps();
    for (std::int64_t i = 1; i <= n; ++i) {
        const double h = (i <= grid.n_full) ? cfg.dt : grid.last;
        const double s = (i <= grid.n_full) ? sdt : std::sqrt(grid.last);
        x += cfg.mu * h + s * inc.normal();
        const double t = grid.time_at(i, cfg.dt, T);
        if (x < run_min) {
            run_min = x;
            st.h_inf = t;
        }
        if (x > run_max) {
            run_max = x;
            st.h_sup = t;
        }
        if (x - run_min > st.d_plus) st.d_plus = x - run_min;
        if (run_max - x > st.d_minus) st.d_minus = run_max - x;
    }
    st.inf = run_min;
    st.sup = run_max;
    st.x_T = x;
    st.inf_first = st.h_inf <= st.h_sup;
    return st;
}

/// Reduce a stored grid trajectory (values[0..n], value i at time i*dt except
/// the last point which sits at T) to DecompStats. Extremes resolve ties to
/// the earliest index.
inline DecompStats decomp_stats_from_values(const std::vector<double>& values, double dt,
                                            double T) {
    const auto n = static_cast<std::int64_t>(values.size()) - 1;
    std::int64_t i_min = 0, i_max = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        if (v < values[static_cast<std::size_t>(i_min)]) i_min = i;
        if (v > values[static_cast<std::size_t>(i_max)]) i_max = i;
    }
    auto drawdown_on = [&](std::int64_t l, std::int64_t r) {
        double rm = values[static_cast<std::size_t>(l)], dd = 0.0;
        for (std::int64_t i = l; i <= r; ++i) {
            const double v = values[static_cast<std::size_t>(i)];
            if (v > rm) rm = v;
            if (rm - v > dd) dd = rm - v;
        }
        return dd;
    };
    auto drawup_on = [&](std::int64_t l, std::int64_t r) {
        double rn = values[static_cast<std::size_t>(l)], du = 0.0;
        for (std::int64_t i = l; i <= r; ++i) {
            const double v = values[static_cast<std::size_t>(i)];
            if (v < rn) rn = v;
            if (v - rn > du) du = v - rn;
        }
        return du;
    };
    auto time_at = [&](std::int64_t i) {
        return i == n ? T : static_cast<double>(i) * dt;
    };

    DecompStats d;
    d.path.T = T;
    d.path.inf = values[static_cast<std::size_t>(i_min)];
    d.path.sup = values[static_cast<std::size_t>(i_max)];
    d.path.h_inf = time_at(i_min);
    d.path.h_sup = time_at(i_max);
    d.path.x_T = values[static_cast<std::size_t>(n)];
    d.path.d_minus = drawdown_on(0, n);
    d.path.d_plus = drawup_on(0, n);
    d.path.inf_first = i_min <= i_max;
    const std::int64_t i1 = std::min(i_min, i_max), i2 = std::max(i_min, i_max);
    d.d_seg1 = drawdown_on(0, i1);
    d.d_seg2 = drawdown_on(i1, i2);
    d.d_seg3 = drawdown_on(i2, n);
    d.d_pre_ddown = drawdown_on(0, i_min);
    d.d_post_dup = drawup_on(i_min, n);
    return d;
}

/// As simulate_path but also computes the drawdowns of the three fragments
/// split at the two extreme times. Needs the whole trajectory, which is kept
/// in `scratch` (reused across calls).
inline DecompStats simulate_path_decomp(const McConfig& cfg, std::uint64_t path_index,
                                        std::vector<double>& scratch) {
    const double T = detail::draw_horizon(cfg, path_index);
    const auto grid = detail::Grid::over(T, cfg.dt);
    rng::Stream inc(cfg.seed, path_index, rng::kStreamIncrements);

    const std::int64_t n = grid.n_steps();
    scratch.resize(static_cast<std::size_t>(n) + 1);
    scratch[0] = 0.0;
    const double sdt = std::sqrt(cfg.dt);
    double x = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const double h = (i <= grid.n_full) ? cfg.dt : grid.last;
        const double s = (i <= grid.n_full) ? sdt : std::sqrt(grid.last);
        x += cfg.mu * h + s * inc.normal();
        scratch[static_cast<std::size_t>(i)] = x;
    }
    return decomp_stats_from_values(scratch, cfg.dt, T);
}

// ---------------------------------------------------------------------------
// Parallel driving. Paths are assigned to fixed blocks; workers pull block
// indices from an atomic counter and write into preallocated per-path or
// per-block slots, so the results (including every floating-point sum) are
// identical for any worker count.

namespace detail {

inline constexpr std::int64_t kBlock = 1024;

template <class Body>  // Body: (std::int64_t path_index) -> void
inline void parallel_paths(std::int64_t n_paths, int threads, Body body) {
    const std::int64_t n_blocks = (n_paths + kBlock - 1) / kBlock;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    const int nt = threads > 0 ? threads : hw;
    if (nt == 1 || n_paths < 2 * kBlock) {
        for (std::int64_t p = 0; p < n_paths; ++p) body(p);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            const std::int64_t lo = b * kBlock;
            const std::int64_t hi = std::min(lo + kBlock, n_paths);
            for (std::int64_t p = lo; p < hi; ++p) body(p);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// All paths of an ensemble, indexed by path. Deterministic for any thread
/// count.
inline std::vector<PathStats> sample_paths(const McConfig& cfg) {
    cfg.validate();
    std::vector<PathStats> out(static_cast<std::size_t>(cfg.n_paths));
    detail::parallel_paths(cfg.n_paths, cfg.threads, [&](std::int64_t p) {
        out[static_cast<std::size_t>(p)] = simulate_path(cfg, static_cast<std::uint64_t>(p));
    });
    return out;
}

inline std::vector<DecompStats> sample_decomp_paths(const McConfig& cfg) {
    cfg.validate();
    std::vector<DecompStats> out(static_cast<std::size_t>(cfg.n_paths));
    detail::parallel_paths(cfg.n_paths, cfg.threads, [&](std::int64_t p) {
        thread_local std::vector<double> scratch;
        out[static_cast<std::size_t>(p)] =
            simulate_path_decomp(cfg, static_cast<std::uint64_t>(p), scratch);
    });
    return out;
}

/// Run the ensemble and reduce functional(PathStats) to mean and standard
/// error. Per-block partial sums are combined in block order, so the reduction
/// is bit-identical regardless of scheduling.
template <class Functional>
inline EstimateWithCI run_ensemble(const McConfig& cfg, Functional functional) {
    cfg.validate();
    const std::int64_t n_blocks = (cfg.n_paths + detail::kBlock - 1) / detail::kBlock;
    std::vector<double> bsum(static_cast<std::size_t>(n_blocks), 0.0);
    std::vector<double> bsumsq(static_cast<std::size_t>(n_blocks), 0.0);
    detail::parallel_paths(cfg.n_paths, cfg.threads, [&](std::int64_t p) {
        const double v = functional(simulate_path(cfg, static_cast<std::uint64_t>(p)));
        const auto b = static_cast<std::size_t>(p / detail::kBlock);
        bsum[b] += v;
        bsumsq[b] += v * v;
    });
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t b = 0; b < n_blocks; ++b) {
        sum += bsum[static_cast<std::size_t>(b)];
        sumsq += bsumsq[static_cast<std::size_t>(b)];
    }
    const auto n = static_cast<double>(cfg.n_paths);
    EstimateWithCI e;
    e.n = cfg.n_paths;
    e.mean = sum / n;
    if (cfg.n_paths > 1) {
        const double var = std::max(0.0, (sumsq - n * e.mean * e.mean) / (n - 1.0));
        e.std_err = std::sqrt(var / n);
    }
    return e;
}

/// Columnar per-path sink; one header line then one comma-separated record
/// per path. LF line endings, '.' decimal point.
inline void write_paths_csv(std::ostream& os, const std::vector<PathStats>& paths) {
    os << "path_index,T,d_plus,d_minus,inf,sup,h_inf,h_sup,x_T,inf_first\n";
    char buf[512];
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const PathStats& p = paths[i];
        std::snprintf(buf, sizeof buf,
                      "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", i, p.T,
                      p.d_plus, p.d_minus, p.inf, p.sup, p.h_inf, p.h_sup, p.x_T,
                      p.inf_first ? 1 : 0);
        os << buf;
    }
}

}  // namespace drawdown
