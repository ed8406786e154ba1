// dlc: command-line front end for the discordlike-coherence library.
//
//   dlc compute STATE.json [--measures ico,dac,discord] [--basis BASES.json]
//   dlc sweep werner|cq-angle [--steps N] [--measures ...]
//   dlc verify SUITE [--trials N] [--dims AxB] [--seed S]
//   dlc random --dims AxB --ensemble haar-pure|ginibre-mixed --seed S --out FILE
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dlc/dlc.hpp"

#ifndef DLC_VERSION
#define DLC_VERSION "0.0.0"
#endif

namespace {

using dlc::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct RunConfig {
    std::uint64_t seed = 0;
    std::string format;  // empty: per-command default
    dlc::OptimizerSettings optimizer;
    bool trace = false;
    std::string part = "a";
    std::string out;
};

dlc::Dims parse_dims(const std::string& s) {
    static const std::regex pattern(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) throw dlc::ValidationError("--dims: expected AxB, got \"" + s + "\"");
    const dlc::Dims d{std::stoul(m[1]), std::stoul(m[2])};
    if (d.a == 0 || d.b == 0) throw dlc::ValidationError("--dims: dimensions must be >= 1");
    return d;
}

std::vector<std::string> parse_measures(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto canon = dlc::canonical_measure(item);
        if (!canon) throw dlc::ValidationError("unknown measure: " + item);
        out.push_back(*canon);
    }
    if (out.empty()) throw dlc::ValidationError("--measures: empty list");
    return out;
}

std::string default_measures() {
    std::string s;
    for (const auto& n : dlc::measure_names()) {
        if (n == "l1_cc") continue;
        if (!s.empty()) s += ',';
        s += n;
    }
    return s;
}

json config_json(const RunConfig& rc) {
    const auto& t = dlc::tolerances();
    return json{{"seed", rc.seed},
                {"format", rc.format},
                {"part", rc.part},
                {"optimizer",
                 {{"restarts", rc.optimizer.restarts},
                  {"max_iterations", rc.optimizer.max_iterations},
                  {"tolerance", rc.optimizer.tolerance}}},
                {"tolerances",
                 {{"hermitian", t.hermitian},
                  {"trace", t.trace},
                  {"eig", t.eigen_clip},
                  {"support", t.support},
                  {"unitary", t.unitary},
                  {"channel", t.channel}}}};
}

json envelope(const RunConfig& rc, const std::string& command) {
    return json{{"tool", "dlc"}, {"version", DLC_VERSION}, {"command", command}, {"config", config_json(rc)}};
}

std::string csv_comment(const RunConfig& rc, const std::string& command) {
    return "# dlc " DLC_VERSION " " + command + " seed=" + std::to_string(rc.seed) + "\n";
}

void emit(const RunConfig& rc, const std::string& text) {
    if (rc.out.empty()) {
        std::cout << text;
    } else {
        dlc::write_text_file(rc.out, text);
    }
}

int cmd_compute(const RunConfig& rc, const std::string& state_file, const std::string& measures,
                const std::string& basis_file) {
    auto rho = dlc::state_from_json(dlc::read_json_file(state_file));
    dlc::Dims dims = rho.dims();
    dlc::BasisPair bases{dlc::ReferenceBasis::computational(dims.a), dlc::ReferenceBasis::computational(dims.b)};
    if (!basis_file.empty()) bases = dlc::bases_from_json(dlc::read_json_file(basis_file), dims);
    if (rc.part == "b") {
        rho = rho.swapped();
        std::swap(bases.a, bases.b);
    }
    auto opt = rc.optimizer;
    opt.seed = rc.seed;
    const auto names = parse_measures(measures);
    const auto ev = dlc::evaluate_measures(rho, names, bases.a, bases.b, opt);

    if (rc.format == "csv") {
        std::string header, row;
        for (const auto& [name, v] : ev.values) {
            header += (header.empty() ? "" : ",") + name;
            row += (row.empty() ? "" : ",") + dlc::format12(v);
        }
        emit(rc, csv_comment(rc, "compute") + header + "\n" + row + "\n");
        return kExitOk;
    }
    json j = envelope(rc, "compute");
    j["state"] = state_file;
    j["dims"] = {rho.dims().a, rho.dims().b};
    json vals = json::object();
    for (const auto& [name, v] : ev.values) vals[name] = dlc::round12(v);
    j["measures"] = vals;
    if (rc.trace && ev.discord_trace) j["trace"] = dlc::trace_to_json(*ev.discord_trace);
    emit(rc, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const RunConfig& rc, const std::string& family, std::size_t steps, const std::string& measures) {
    const auto fam = dlc::parse_family(family);
    if (!fam) throw dlc::ValidationError("unknown family: " + family + " (expected werner or cq-angle)");
    auto opt = rc.optimizer;
    opt.seed = rc.seed;
    const auto table = dlc::sweep(*fam, steps, parse_measures(measures), opt);
    if (rc.format == "json") {
        json j = envelope(rc, "sweep");
        j["family"] = family;
        j["parameter"] = table.parameter;
        j["measures"] = table.measures;
        json rows = json::array();
        for (std::size_t r = 0; r < table.params.size(); ++r) {
            json row{{table.parameter, dlc::round12(table.params[r])}};
            for (std::size_t k = 0; k < table.measures.size(); ++k)
                row[table.measures[k]] = dlc::round12(table.values[r][k]);
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        emit(rc, j.dump(2) + "\n");
    } else {
        emit(rc, csv_comment(rc, "sweep " + family) + table.to_csv());
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& rc, const std::string& suite_name, std::size_t trials, const std::string& dims,
               std::optional<double> tol_suite, std::size_t threads) {
    const auto suite = dlc::parse_suite(suite_name);
    if (!suite) throw dlc::ValidationError("unknown suite: " + suite_name);
    dlc::SuiteConfig cfg;
    cfg.trials = trials;
    cfg.seed = rc.seed;
    cfg.optimizer = rc.optimizer;
    cfg.threads = threads;
    if (!dims.empty()) cfg.dims = parse_dims(dims);
    if (cfg.dims && cfg.dims->total() > dlc::kMaxOptimizedDim)
        throw dlc::ValidationError("--dims: d_a * d_b must be <= " + std::to_string(dlc::kMaxOptimizedDim));
    cfg.tolerance = tol_suite;
    std::size_t last_percent = 101;
    cfg.progress = [&](std::size_t done, std::size_t total) {
        const std::size_t pct = 100 * done / total;
        if (pct / 10 != last_percent / 10 || done == total) {
            std::cerr << "[" << suite_name << "] " << done << "/" << total << "\n";
            last_percent = pct;
        }
    };
    const auto s = dlc::run_suite(*suite, cfg);

    if (rc.format == "csv") {
        std::string text = csv_comment(rc, "verify " + suite_name) + "suite,check,trials,failures,worst,tolerance,passed\n";
        for (const auto& c : s.checks)
            text += suite_name + "," + c.name + "," + std::to_string(s.trials) + "," + std::to_string(c.failures) +
                    "," + dlc::format12(c.worst) + "," + dlc::format12(c.tolerance) + "," +
                    (c.passed() ? "true" : "false") + "\n";
        emit(rc, text);
    } else {
        json j = envelope(rc, "verify");
        j["suite"] = suite_name;
        j["trials"] = s.trials;
        j["dims"] = s.dims;
        j["passed"] = s.passed();
        json checks = json::array();
        for (const auto& c : s.checks)
            checks.push_back({{"check", c.name},
                              {"worst", dlc::round12(c.worst)},
                              {"tolerance", c.tolerance},
                              {"failures", c.failures},
                              {"passed", c.passed()}});
        j["checks"] = std::move(checks);
        emit(rc, j.dump(2) + "\n");
    }
    return s.passed() ? kExitOk : kExitFailure;
}

int cmd_random(const RunConfig& rc, const std::string& dims, const std::string& ensemble) {
    const auto d = parse_dims(dims);
    const auto ens = dlc::parse_ensemble(ensemble);
    if (!ens) throw dlc::ValidationError("unknown ensemble: " + ensemble + " (expected haar-pure or ginibre-mixed)");
    const auto rho = dlc::random_state(d.a, d.b, *ens, rc.seed);
    emit(rc, dlc::state_to_json(rho).dump() + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherence, correlated coherence and discord for bipartite density matrices"};
    app.set_version_flag("--version", DLC_VERSION);
    app.require_subcommand(1);

    RunConfig rc;
    auto& tol = dlc::tolerances();
    app.add_option("--tol-hermitian", tol.hermitian, "Hermiticity tolerance")->capture_default_str();
    app.add_option("--tol-trace", tol.trace, "Unit-trace tolerance")->capture_default_str();
    app.add_option("--tol-eig", tol.eigen_clip, "Negative-eigenvalue clip")->capture_default_str();
    app.add_option("--tol-support", tol.support, "Support cutoff for relative entropy")->capture_default_str();
    app.add_option("--tol-unitary", tol.unitary, "Unitarity tolerance for bases")->capture_default_str();
    app.add_option("--tol-channel", tol.channel, "Kraus completeness tolerance")->capture_default_str();

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", rc.seed, "Root seed")->capture_default_str();
        sub->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", rc.out, "Write output to this file instead of stdout");
    };
    const auto add_optimizer = [&](CLI::App* sub) {
        sub->add_option("--restarts", rc.optimizer.restarts, "Optimizer restarts")->capture_default_str();
        sub->add_option("--max-iter", rc.optimizer.max_iterations, "Iterations per restart")->capture_default_str();
    };

    std::string state_file, basis_file, measures = default_measures();
    auto* compute = app.add_subcommand("compute", "Evaluate measures on a state file");
    compute->add_option("state", state_file, "State JSON file")->required();
    compute->add_option("--measures", measures, "Comma-separated measure names");
    compute->add_option("--basis", basis_file, "Reference frames JSON {\"a\": ..., \"b\": ...}");
    compute->add_flag("--trace", rc.trace, "Include the discord optimizer trace (JSON)");
    compute->add_option("--part", rc.part, "Measured subsystem")->check(CLI::IsMember({"a", "b"}));
    add_common(compute);
    add_optimizer(compute);

    std::string family;
    std::size_t steps = 11;
    std::string sweep_measures = "I_co,dac,discord";
    auto* sweep = app.add_subcommand("sweep", "Evaluate measures along a state family");
    sweep->add_option("family", family, "werner | cq-angle")->required();
    sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->capture_default_str();
    sweep->add_option("--measures", sweep_measures, "Comma-separated measure names")->capture_default_str();
    add_common(sweep);
    add_optimizer(sweep);

    std::string suite, dims;
    std::size_t trials = 100, threads = 0;
    std::optional<double> tol_suite;
    auto* verify = app.add_subcommand("verify", "Run a randomized verification suite");
    verify->add_option("suite", suite, "theorem1 | theorem2 | theorem3 | superadditivity | invariance | zero-sets")
        ->required();
    verify->add_option("--trials", trials, "Number of trials")->capture_default_str();
    verify->add_option("--dims", dims, "Subsystem dimensions AxB");
    verify->add_option("--tol-suite", tol_suite, "Override the suite pass tolerance");
    verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
    add_common(verify);
    add_optimizer(verify);

    std::string rdims = "2x2", ensemble = "ginibre-mixed";
    auto* random = app.add_subcommand("random", "Write a random state file");
    random->add_option("--dims", rdims, "Subsystem dimensions AxB")->capture_default_str();
    random->add_option("--ensemble", ensemble, "haar-pure | ginibre-mixed")->capture_default_str();
    add_common(random);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (rc.format.empty()) rc.format = sweep->parsed() ? "csv" : "json";
        if (compute->parsed()) return cmd_compute(rc, state_file, measures, basis_file);
        if (sweep->parsed()) return cmd_sweep(rc, family, steps, sweep_measures);
        if (verify->parsed()) return cmd_verify(rc, suite, trials, dims, tol_suite, threads);
        if (random->parsed()) return cmd_random(rc, rdims, ensemble);
    } catch (const dlc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const dlc::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
