#pragma once

// Randomized verification campaigns. Each trial draws its own seed from the
// root seed, trials run in a parallel map, and the summary is an
// order-independent reduction (min/max/count).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dlc/channels.hpp"
#include "dlc/discord.hpp"
#include "dlc/measures.hpp"
#include "dlc/states.hpp"

namespace dlc {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency).
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

enum class Suite { Theorem1, Theorem2, Theorem3, Superadditivity, Invariance, ZeroSets };

inline std::optional<Suite> parse_suite(const std::string& s) {
    static const std::map<std::string, Suite> names{{"theorem1", Suite::Theorem1},
                                                    {"theorem2", Suite::Theorem2},
                                                    {"theorem3", Suite::Theorem3},
                                                    {"superadditivity", Suite::Superadditivity},
                                                    {"invariance", Suite::Invariance},
                                                    {"zero-sets", Suite::ZeroSets}};
    if (auto it = names.find(s); it != names.end()) return it->second;
    return std::nullopt;
}

inline std::string to_string(Suite s) {
    switch (s) {
        case Suite::Theorem1: return "theorem1";
        case Suite::Theorem2: return "theorem2";
        case Suite::Theorem3: return "theorem3";
        case Suite::Superadditivity: return "superadditivity";
        case Suite::Invariance: return "invariance";
        case Suite::ZeroSets: return "zero-sets";
    }
    return "?";
}

/// Default pass tolerance of each suite.
inline double default_tolerance(Suite s) {
    switch (s) {
        case Suite::Theorem2: return 1e-4;
        case Suite::Theorem3: return 1e-10;
        case Suite::ZeroSets: return 1e-10;
        default: return 1e-9;
    }
}

struct SuiteConfig {
    std::size_t trials = 100;
    std::optional<Dims> dims;  // superadditivity cycles 2x2, 2x3, 3x3 when unset; others default to 2x2
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    OptimizerSettings optimizer;
    std::size_t invariance_samples = 50;
    std::size_t threads = 0;
    std::function<void(std::size_t, std::size_t)> progress;  // (done, total)
};

/// Named check within a suite: `worst` is the largest violation-side value
/// observed, compared against `tolerance`.
struct CheckSummary {
    std::string name;
    double worst = -std::numeric_limits<double>::infinity();
    double tolerance = 0.0;
    std::size_t failures = 0;
    [[nodiscard]] bool passed() const { return failures == 0; }
};

struct SuiteSummary {
    Suite suite = Suite::Theorem1;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string dims;
    std::vector<CheckSummary> checks;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckSummary& c) { return c.passed(); });
    }
};

namespace detail {

// Per-trial measurements for each check: violation-side value, e.g. -gap.
using TrialValues = std::vector<double>;

inline Dims suite_dims(const SuiteConfig& cfg, std::size_t trial, bool cycle) {
    if (cfg.dims) return *cfg.dims;
    if (!cycle) return {2, 2};
    static constexpr Dims cycle_dims[] = {{2, 2}, {2, 3}, {3, 3}};
    return cycle_dims[trial % 3];
}

inline OptimizerSettings trial_optimizer(const SuiteConfig& cfg, std::uint64_t trial_seed, std::uint64_t salt) {
    OptimizerSettings o = cfg.optimizer;
    o.seed = derive_seed(trial_seed, salt);
    return o;
}

inline TrialValues theorem1_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, false);
    CounterRng rng(s);
    const auto rho = DensityMatrix::from_raw(random_density(d.total(), Ensemble::GinibreMixed, rng), d);
    const auto ppio = make_rank_one_ppio(d.a, random_rank_one_unitaries(d.a, rng));
    const auto g = theorem1_gap(rho, ppio);
    return {-g.gap, g.mi_drop - g.gap};
}

inline TrialValues theorem2_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, false);
    CounterRng rng(s);
    const auto rho = DensityMatrix::from_raw(random_density(d.total(), Ensemble::GinibreMixed, rng), d);
    const double da = discord(rho, trial_optimizer(cfg, s, 1)).value;
    const double dc = theorem2_minimize(rho, trial_optimizer(cfg, s, 2)).value;
    return {std::abs(da - dc)};
}

inline TrialValues theorem3_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, false);
    CounterRng rng(s);
    const auto rho = random_cq_state(d, ReferenceBasis::computational(d.a), rng);
    const auto free_op = [&] {
        const auto ua = IncoherentUnitary::random(d.a, rng);
        const auto b = random_kraus_set(d.b, 1 + rng.index(3), rng);
        return make_theorem3_free(ua, b);
    };
    CMatrix out;
    if (i % 2 == 0) {
        out = free_op().apply(rho.matrix());
    } else {
        // convex mixture of two factorizable maps with different U_a
        const double t = rng.uniform(0.1, 0.9);
        out = ChannelMixture({t, 1.0 - t}, {free_op(), free_op()}).apply(rho.matrix());
    }
    return {dac(DensityMatrix::from_raw(out, d))};
}

inline TrialValues superadditivity_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, true);
    CounterRng rng(s);
    const auto ens = i % 4 == 3 ? Ensemble::HaarPure : Ensemble::GinibreMixed;
    const auto rho = DensityMatrix::from_raw(random_density(d.total(), ens, rng), d);
    const auto r = measure_report(rho);
    return {-(r.C_r_ab - r.C_r_a - r.C_r_b)};
}

inline TrialValues invariance_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, false);
    CounterRng rng(s);
    const auto rho = DensityMatrix::from_raw(random_density(d.total(), Ensemble::GinibreMixed, rng), d);
    const double rep = dac_invariance_check(rho, cfg.invariance_samples, derive_seed(s, 1));
    const double base = dac(rho);
    const CMatrix u = tensor(IncoherentUnitary::random(d.a, rng).matrix(), IncoherentUnitary::random(d.b, rng).matrix());
    const double iuo = std::abs(dac(DensityMatrix::from_raw(u * rho.matrix() * u.adjoint(), d)) - base);
    const auto ppio = make_rank_one_ppio(d.a, random_rank_one_unitaries(d.a, rng)).local_a(d.b);
    const double killed = dac(DensityMatrix::from_raw(ppio.apply(rho.matrix()), d));
    return {rep, iuo, killed};
}

inline TrialValues zero_sets_trial(const SuiteConfig& cfg, std::size_t i, std::uint64_t s) {
    const Dims d = suite_dims(cfg, i, false);
    CounterRng rng(s);
    const auto ref = ReferenceBasis::computational(d.a);
    const auto m1 = random_cq_state(d, ref, rng);
    const auto m2 = random_cq_state(d, ref, rng);
    const double t = rng.uniform();
    const auto mix = DensityMatrix::from_raw(t * m1.matrix() + (1.0 - t) * m2.matrix(), d);
    CMatrix diag = random_density(d.total(), Ensemble::GinibreMixed, rng).diagonal().asDiagonal();
    const auto diagonal = DensityMatrix::from_raw(diag, d);
    const double member_discord = discord(m1, trial_optimizer(cfg, s, 3)).value;
    return {dac(mix), std::max(dac(diagonal), dac_symmetric(diagonal)), member_discord};
}

}  // namespace detail

/// 1/2 |0><0| (x) |0><0| + 1/2 |+><+| (x) |1><1|: a mixture of two zero-discord
/// states with classical parts in different bases.
inline DensityMatrix nonconvexity_witness() {
    return DensityMatrix::from_raw(
        0.5 * tensor(projector(ket(2, 0)), projector(ket(2, 0))) + 0.5 * tensor(projector(ket_plus()), projector(ket(2, 1))),
        {2, 2});
}

inline SuiteSummary run_suite(Suite suite, const SuiteConfig& cfg) {
    const double tol = cfg.tolerance.value_or(default_tolerance(suite));
    std::vector<CheckSummary> checks;
    std::function<detail::TrialValues(const SuiteConfig&, std::size_t, std::uint64_t)> trial;
    switch (suite) {
        case Suite::Theorem1:
            checks = {{"ico_monotone: -(I_co drop)", {}, tol}, {"strengthened: (I drop) - (I_co drop)", {}, tol}};
            trial = detail::theorem1_trial;
            break;
        case Suite::Theorem2:
            checks = {{"|min_bases dac - discord|", {}, tol}};
            trial = detail::theorem2_trial;
            break;
        case Suite::Theorem3:
            checks = {{"dac(free(CQ))", {}, tol}};
            trial = detail::theorem3_trial;
            break;
        case Suite::Superadditivity:
            checks = {{"-(C_r_ab - C_r_a - C_r_b)", {}, tol}};
            trial = detail::superadditivity_trial;
            break;
        case Suite::Invariance:
            checks = {{"dac representation deviation", {}, tol},
                      {"dac local-IUO deviation", {}, tol},
                      {"dac after rank-one PPIO", {}, std::min(tol, 1e-10)}};
            trial = detail::invariance_trial;
            break;
        case Suite::ZeroSets:
            checks = {{"dac(mixture of CQ members)", {}, tol},
                      {"dac and dac_sym of diagonal states", {}, tol},
                      {"discord of CQ member", {}, std::max(tol, 1e-6)}};
            trial = detail::zero_sets_trial;
            break;
    }
    for (auto& c : checks) c.worst = -std::numeric_limits<double>::infinity();

    std::vector<detail::TrialValues> results(cfg.trials);
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    parallel_for(
        cfg.trials,
        [&](std::size_t i) {
            results[i] = trial(cfg, i, derive_seed(cfg.seed, i));
            const std::size_t n = ++done;
            if (cfg.progress) {
                std::lock_guard lock(progress_mutex);
                cfg.progress(n, cfg.trials);
            }
        },
        cfg.threads);

    for (const auto& r : results)
        for (std::size_t k = 0; k < checks.size(); ++k) {
            checks[k].worst = std::max(checks[k].worst, r[k]);
            if (!(r[k] <= checks[k].tolerance)) ++checks[k].failures;
        }

    if (suite == Suite::ZeroSets) {
        // fixed witness: discord > 0.01 means the zero-discord set is not convex
        OptimizerSettings o = cfg.optimizer;
        o.seed = derive_seed(cfg.seed, 0xC0FFEE);
        const double w = discord(nonconvexity_witness(), o).value;
        checks.push_back({"0.01 - discord(non-convexity witness)", 0.01 - w, 0.0, 0.01 - w < 0.0 ? 0u : 1u});
    }

    SuiteSummary s;
    s.suite = suite;
    s.trials = cfg.trials;
    s.seed = cfg.seed;
    s.dims = cfg.dims ? to_string(*cfg.dims) : (suite == Suite::Superadditivity ? "2x2,2x3,3x3" : "2x2");
    s.checks = std::move(checks);
    return s;
}

}  // namespace dlc
