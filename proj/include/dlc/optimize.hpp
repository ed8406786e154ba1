#pragma once

// Multi-start Nelder-Mead descent over angle vectors, and the complex Givens
// parameterization of orthonormal bases that the basis searches share.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "dlc/linalg.hpp"
#include "dlc/random.hpp"

namespace dlc {

/// Number of angles for a basis of dimension d: one (theta, phi) pair per index pair.
constexpr std::size_t givens_param_count(std::size_t d) { return d * (d - 1); }

/// U = prod_{i<j} G_ij(theta, phi). Column phases of a basis are irrelevant to
/// projective measurements, so this product reaches every basis. For d = 2,
/// column 0 is (cos theta, e^{i phi} sin theta).
inline CMatrix givens_unitary(std::size_t d, const std::vector<double>& params) {
    CMatrix u = identity(d);
    std::size_t p = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j, p += 2) {
            const double c = std::cos(params[p]);
            const double s = std::sin(params[p]);
            const Complex e = std::polar(1.0, params[p + 1]);
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            // u <- u * G: only columns i and j change.
            const CVector ci = u.col(ii);
            const CVector cj = u.col(jj);
            u.col(ii) = c * ci + e * s * cj;
            u.col(jj) = -std::conj(e) * s * ci + c * cj;
        }
    return u;
}

struct OptimizerSettings {
    std::size_t restarts = 16;
    std::size_t max_iterations = 500;
    double tolerance = 1e-9;  // spread of simplex values at convergence
    double initial_step = 0.3;
    std::uint64_t seed = 0;
};

struct RestartRecord {
    std::vector<double> initial;
    std::vector<double> final_params;
    double final_value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct OptimizationTrace {
    double best_value = 0.0;
    std::vector<double> best_params;
    std::size_t best_restart = 0;
    std::vector<RestartRecord> restarts;
    bool converged = false;
};

/// Nelder-Mead simplex descent from `x0`.
template <class F>
RestartRecord nelder_mead(F&& f, std::vector<double> x0, const OptimizerSettings& cfg) {
    const std::size_t n = x0.size();
    RestartRecord rec;
    rec.initial = x0;
    if (n == 0) {
        rec.final_value = f(x0);
        rec.final_params = x0;
        rec.converged = true;
        return rec;
    }
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t k = 0; k < n; ++k) pts[k + 1][k] += cfg.initial_step;
    std::vector<double> vals(n + 1);
    for (std::size_t k = 0; k <= n; ++k) vals[k] = f(pts[k]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    const auto along = [&](double t, std::vector<double>& out) {
        const auto& worst = pts[order[n]];
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
    };

    std::size_t it = 0;
    for (; it < cfg.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        if (vals[order[n]] - vals[order[0]] <= cfg.tolerance) {
            rec.converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t c = 0; c < n; ++c) centroid[c] += pts[order[k]][c] / static_cast<double>(n);

        along(-1.0, trial);
        const double fr = f(trial);
        if (fr < vals[order[0]]) {
            along(-2.0, trial2);
            const double fe = f(trial2);
            if (fe < fr) {
                pts[order[n]] = trial2;
                vals[order[n]] = fe;
            } else {
                pts[order[n]] = trial;
                vals[order[n]] = fr;
            }
            continue;
        }
        if (fr < vals[order[n - 1]]) {
            pts[order[n]] = trial;
            vals[order[n]] = fr;
            continue;
        }
        const bool outside = fr < vals[order[n]];
        along(outside ? -0.5 : 0.5, trial2);
        const double fc = f(trial2);
        if (fc < (outside ? fr : vals[order[n]])) {
            pts[order[n]] = trial2;
            vals[order[n]] = fc;
            continue;
        }
        // shrink toward the best vertex
        const auto best = pts[order[0]];
        for (std::size_t k = 1; k <= n; ++k) {
            auto& p = pts[order[k]];
            for (std::size_t c = 0; c < n; ++c) p[c] = best[c] + 0.5 * (p[c] - best[c]);
            vals[order[k]] = f(p);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    rec.final_params = pts[best];
    rec.final_value = vals[best];
    rec.iterations = it;
    return rec;
}

/// Independent Nelder-Mead restarts from uniformly drawn angle vectors; the
/// reported minimum is the best restart, ties going to the lowest index.
template <class F>
OptimizationTrace multistart_minimize(F&& f, std::size_t n_params, const OptimizerSettings& cfg) {
    OptimizationTrace trace;
    const std::size_t restarts = std::max<std::size_t>(cfg.restarts, 1);
    trace.restarts.reserve(restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
        CounterRng rng(derive_seed(cfg.seed, r));
        std::vector<double> x0(n_params);
        for (std::size_t k = 0; k < n_params; ++k)
            x0[k] = (k % 2 == 0) ? rng.uniform(0.0, std::numbers::pi) : rng.uniform(0.0, 2.0 * std::numbers::pi);
        trace.restarts.push_back(nelder_mead(f, std::move(x0), cfg));
    }
    for (std::size_t r = 0; r < trace.restarts.size(); ++r)
        if (r == 0 || trace.restarts[r].final_value < trace.best_value) {
            trace.best_value = trace.restarts[r].final_value;
            trace.best_restart = r;
        }
    trace.best_params = trace.restarts[trace.best_restart].final_params;
    trace.converged = trace.restarts[trace.best_restart].converged;
    return trace;
}

}  // namespace dlc
