// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.
// Tolerances and runtime limits are fixed here and are not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dlc/dlc.hpp"
#include "oracles.hpp"

using namespace dlc;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> body;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Records the largest |value - expect| and fails if it exceeds tol.
struct Tracker {
    double tol;
    double worst = 0.0;
    std::string worst_label;
    void near(const std::string& label, double value, double expect) {
        const double dev = std::abs(value - expect);
        if (!(dev <= worst) || worst_label.empty()) {  // NaN counts as worst
            worst = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
            worst_label = label;
        }
    }
    [[nodiscard]] bool ok() const { return worst <= tol; }
};

Outcome from_suite(const SuiteSummary& s) {
    Outcome o{s.passed(), ""};
    for (const auto& c : s.checks) {
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += c.name + " worst=" + fmt(c.worst) + " tol=" + fmt(c.tolerance) +
                    " failures=" + std::to_string(c.failures);
    }
    return o;
}

DensityMatrix ginibre_trial_state(Dims d, std::uint64_t s) {
    CounterRng rng(s);
    return DensityMatrix::from_raw(random_density(d.total(), Ensemble::GinibreMixed, rng), d);
}

Outcome ac1_fixed_points() {
    Tracker t{1e-6, 0.0, {}};
    const auto bell = bell_phi_plus();
    const auto ref2 = ReferenceBasis::computational(2);
    t.near("I_co(bell)", correlated_coherence(bell), 1.0);
    t.near("dac(bell)", dac(bell), 1.0);
    t.near("discord(bell)", discord(bell).value, 1.0);
    t.near("C_r_upper(bell)", c_r_upper(bell, ref2), 1.0);
    t.near("C_r_sym(bell)", c_r_symmetric(bell, ReferenceBasis::computational(4)), 1.0);

    CounterRng rng(0xAC1);
    for (const Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}, Dims{3, 3}}) {
        const auto ref = ReferenceBasis::computational(d.a);
        for (int k = 0; k < 25; ++k) {
            const auto cq = random_cq_state(d, ref, rng);
            t.near("dac(CQ " + to_string(d) + ")", dac(cq), 0.0);
            t.near("C_r_upper(CQ " + to_string(d) + ")", c_r_upper(cq, ref), 0.0);
            const auto prod = product(random_density(d.a, Ensemble::GinibreMixed, rng),
                                      random_density(d.b, Ensemble::GinibreMixed, rng));
            t.near("I_co(product " + to_string(d) + ")", correlated_coherence(prod), 0.0);
        }
    }
    return {t.ok(), "worst |dev|=" + fmt(t.worst) + " at " + t.worst_label + " tol=1e-06"};
}

Outcome ac2_theorem1() {
    SuiteConfig cfg;
    cfg.trials = 1000;
    cfg.dims = Dims{2, 2};
    cfg.seed = 7;
    cfg.tolerance = 1e-9;
    return from_suite(run_suite(Suite::Theorem1, cfg));
}

Outcome ac3_theorem2() {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.dims = Dims{2, 2};
    cfg.seed = 2;
    cfg.tolerance = 1e-4;
    cfg.optimizer.restarts = 16;
    auto out = from_suite(run_suite(Suite::Theorem2, cfg));

    // grid cross-check on the first 20 states of the same stream
    double worst = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
        const std::uint64_t s = derive_seed(cfg.seed, i);
        const auto rho = ginibre_trial_state({2, 2}, s);
        const double opt = discord(rho, detail::trial_optimizer(cfg, s, 1)).value;
        worst = std::max(worst, std::abs(oracle::grid_discord(rho.matrix(), 2) - opt));
    }
    out.ok = out.ok && worst <= 1e-4;
    out.detail += "; grid vs optimizer (20 states) worst=" + fmt(worst) + " tol=1e-04";
    return out;
}

Outcome ac4_theorem3() {
    SuiteConfig cfg;
    cfg.trials = 500;
    cfg.dims = Dims{2, 2};
    cfg.seed = 3;
    cfg.tolerance = 1e-10;
    return from_suite(run_suite(Suite::Theorem3, cfg));
}

Outcome ac5_superadditivity() {
    SuiteConfig cfg;
    cfg.trials = 1000;  // cycles 2x2, 2x3, 3x3
    cfg.seed = 5;
    cfg.tolerance = 1e-9;
    return from_suite(run_suite(Suite::Superadditivity, cfg));
}

Outcome ac6_invariance() {
    double worst = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
        const std::uint64_t s = derive_seed(6, i);
        const auto rho = ginibre_trial_state(i % 2 == 0 ? Dims{2, 2} : Dims{3, 2}, s);
        worst = std::max(worst, dac_invariance_check(rho, 50, s));
    }
    return {worst <= 1e-9, "max deviation over 100 states x 50 PPIOs=" + fmt(worst) + " tol=1e-09"};
}

Outcome ac7_zero_sets() {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.dims = Dims{2, 2};
    cfg.seed = 8;
    cfg.tolerance = 1e-10;
    return from_suite(run_suite(Suite::ZeroSets, cfg));
}

Outcome ac8_werner() {
    const std::string csv = sweep(SweepFamily::Werner, 11, {"discord"}, {}).to_csv();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    if (line != "p,discord") return {false, "unexpected header: " + line};
    std::vector<double> ps, ds;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        ps.push_back(std::stod(line.substr(0, comma)));
        ds.push_back(std::stod(line.substr(comma + 1)));
    }
    if (ps.size() != 11) return {false, "expected 11 rows, got " + std::to_string(ps.size())};
    bool monotone = true;
    for (std::size_t k = 1; k < ds.size(); ++k) monotone = monotone && ds[k] >= ds[k - 1];
    const double end_dev = std::max(std::abs(ds.front()), std::abs(ds.back() - 1.0));
    double grid = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k)
        grid = std::max(grid, std::abs(oracle::grid_discord(werner(ps[k]).matrix(), 2) - ds[k]));
    const bool ok = monotone && end_dev <= 1e-4 && grid <= 1e-4;
    return {ok, std::string("monotone=") + (monotone ? "yes" : "no") + " endpoint dev=" + fmt(end_dev) +
                    " grid worst=" + fmt(grid) + " tol=1e-04"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "fixed points", 5.0, ac1_fixed_points},
        {2, "theorem1 monotonicity, 1000 states 2x2", 30.0, ac2_theorem1},
        {3, "theorem2 min_bases dac = discord, 200 states", 300.0, ac3_theorem2},
        {4, "theorem3 free operations, 500 pairs", 30.0, ac4_theorem3},
        {5, "superadditivity, 1000 states", 1e9, ac5_superadditivity},
        {6, "dac representation independence", 1e9, ac6_invariance},
        {7, "zero-set structure", 1e9, ac7_zero_sets},
        {8, "werner sweep", 1e9, ac8_werner},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = o.ok && in_time;
        failed += pass ? 0 : 1;
        std::string limit = c.time_limit_s < 1e8 ? " limit=" + fmt(c.time_limit_s) + "s" : "";
        std::printf("[%s] AC%d %s: %s; runtime=%.2fs%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, limit.c_str(), in_time ? "" : " (over time limit)");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
