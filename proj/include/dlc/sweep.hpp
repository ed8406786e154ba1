#pragma once

// One-parameter state families evaluated on a uniform grid.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dlc/evaluate.hpp"
#include "dlc/io.hpp"
#include "dlc/states.hpp"

namespace dlc {

enum class SweepFamily { Werner, CqAngle };

inline std::optional<SweepFamily> parse_family(const std::string& s) {
    if (s == "werner") return SweepFamily::Werner;
    if (s == "cq-angle") return SweepFamily::CqAngle;
    return std::nullopt;
}

/// R(theta) (x) 1 applied to 1/2 |0><0| (x) |0><0| + 1/2 |1><1| (x) |+><+|:
/// a classical-quantum state whose classical basis is rotated away from the
/// reference basis by theta.
inline DensityMatrix cq_angle_state(double theta) {
    CMatrix rot(2, 2);
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const std::vector<double> p{0.5, 0.5};
    const std::vector<CMatrix> blocks{projector(ket(2, 0)), projector(ket_plus())};
    return classical_quantum(p, ReferenceBasis::from_frame(rot), blocks);
}

struct SweepTable {
    std::string parameter;
    std::vector<std::string> measures;
    std::vector<double> params;
    std::vector<std::vector<double>> values;  // one row per parameter value

    [[nodiscard]] std::string to_csv() const {
        std::string out = parameter;
        for (const auto& m : measures) out += "," + m;
        out += "\n";
        for (std::size_t r = 0; r < params.size(); ++r) {
            out += format12(params[r]);
            for (double v : values[r]) out += "," + format12(v);
            out += "\n";
        }
        return out;
    }
};

/// Werner: p in [0, 1]. cq-angle: theta in [0, pi/4].
inline SweepTable sweep(SweepFamily family, std::size_t steps, const std::vector<std::string>& measures,
                        const OptimizerSettings& cfg) {
    if (steps < 2) throw ValidationError("sweep: steps must be >= 2");
    SweepTable t;
    t.parameter = family == SweepFamily::Werner ? "p" : "theta";
    t.measures = measures;
    const double hi = family == SweepFamily::Werner ? 1.0 : std::numbers::pi / 4;
    const auto ba = ReferenceBasis::computational(2);
    const auto bb = ReferenceBasis::computational(2);
    for (std::size_t k = 0; k < steps; ++k) {
        const double x = hi * static_cast<double>(k) / static_cast<double>(steps - 1);
        const auto rho = family == SweepFamily::Werner ? werner(x) : cq_angle_state(x);
        auto ev = evaluate_measures(rho, measures, ba, bb, cfg);
        std::vector<double> row;
        for (const auto& [name, v] : ev.values) row.push_back(v);
        t.params.push_back(x);
        t.values.push_back(std::move(row));
    }
    return t;
}

}  // namespace dlc
