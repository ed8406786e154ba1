#pragma once

// Named-measure evaluation shared by the CLI and the sweep/report paths.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlc/discord.hpp"
#include "dlc/measures.hpp"

namespace dlc {

/// Canonical measure names, in output column order.
inline const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names{"S_ab",      "S_a",     "S_b",   "I",   "C_r_ab",  "C_r_a",  "C_r_b",
                                                "I_co",      "C_r_upper", "C_r_sym", "l1_cc", "dac", "dac_sym", "discord"};
    return names;
}

/// Resolves an alias or case variant to a canonical name.
inline std::optional<std::string> canonical_measure(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    static const std::map<std::string, std::string> aliases{
        {"entropy", "S_ab"}, {"s", "S_ab"},          {"mi", "I"},           {"mutual_information", "I"},
        {"cr", "C_r_ab"},    {"ico", "I_co"},        {"cr_upper", "C_r_upper"}, {"c_upper", "C_r_upper"},
        {"cr_sym", "C_r_sym"}, {"l1", "l1_cc"},      {"dac_symmetric", "dac_sym"}, {"da", "discord"}};
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    for (const auto& n : measure_names()) {
        std::string lower = n;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower == name) return n;
    }
    return std::nullopt;
}

struct Evaluation {
    std::vector<std::pair<std::string, double>> values;
    std::optional<OptimizationTrace> discord_trace;
};

/// Evaluates canonical measure names on one state; report quantities are
/// computed together in one pass.
inline Evaluation evaluate_measures(const DensityMatrix& rho, const std::vector<std::string>& names,
                                    const ReferenceBasis& basis_a, const ReferenceBasis& basis_b,
                                    const OptimizerSettings& cfg) {
    const bool need_report = std::any_of(names.begin(), names.end(), [](const std::string& n) {
        return n != "dac" && n != "dac_sym" && n != "discord";
    });
    const bool need_l1 = std::find(names.begin(), names.end(), "l1_cc") != names.end();
    std::optional<MeasureReport> report;
    if (need_report) report = measure_report(rho, basis_a, basis_b, need_l1);

    Evaluation out;
    for (const auto& n : names) {
        double v = 0.0;
        if (n == "S_ab") v = report->S_ab;
        else if (n == "S_a") v = report->S_a;
        else if (n == "S_b") v = report->S_b;
        else if (n == "I") v = report->I;
        else if (n == "C_r_ab") v = report->C_r_ab;
        else if (n == "C_r_a") v = report->C_r_a;
        else if (n == "C_r_b") v = report->C_r_b;
        else if (n == "I_co") v = report->I_co;
        else if (n == "C_r_upper") v = report->C_r_upper;
        else if (n == "C_r_sym") v = report->C_r_sym;
        else if (n == "l1_cc") v = *report->l1_cc;
        else if (n == "dac") v = dac(rho, basis_a);
        else if (n == "dac_sym") v = dac_symmetric(rho, basis_a, basis_b);
        else if (n == "discord") {
            auto r = discord(rho, cfg);
            v = r.value;
            out.discord_trace = std::move(r.trace);
        } else {
            throw ValidationError("unknown measure: " + n);
        }
        out.values.emplace_back(n, v);
    }
    return out;
}

}  // namespace dlc
