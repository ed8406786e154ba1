#pragma once

// JSON encodings of states, bases, channels, measure reports and optimizer
// traces. Complex entries are [re, im] pairs; matrices are row-major arrays
// of rows.

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dlc/channels.hpp"
#include "dlc/measures.hpp"
#include "dlc/optimize.hpp"
#include "dlc/states.hpp"

namespace dlc {

using json = nlohmann::json;

/// Value rounded to 12 significant digits (report precision).
inline double round12(double x) {
    if (!std::isfinite(x)) return x;
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", x);
    return std::stod(buf.data());
}

inline std::string format12(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", x);
    return buf.data();
}

inline json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Parses a matrix; errors name the offending row/column under `where`.
inline CMatrix matrix_from_json(const json& j, const std::string& where = "matrix") {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw ValidationError(where + "[0]: expected a non-empty array of entries");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!row.is_array()) throw ValidationError(rw + ": expected an array of entries");
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw ValidationError(rw + ": has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(cols));
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& e = row[static_cast<std::size_t>(c)];
            const std::string at = where + " row " + std::to_string(r) + ", column " + std::to_string(c);
            if (e.is_number()) {
                m(r, c) = e.get<double>();
                continue;
            }
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ValidationError(at + ": expected [re, im] pair of numbers");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

inline json state_to_json(const DensityMatrix& rho) {
    return json{{"dims", {rho.dims().a, rho.dims().b}}, {"matrix", matrix_to_json(rho.matrix())}};
}

inline Dims dims_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
        throw ValidationError("dims: expected [d_a, d_b] with positive integers");
    const Dims d{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
    if (d.a == 0 || d.b == 0) throw ValidationError("dims: dimensions must be >= 1");
    return d;
}

inline DensityMatrix state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
        throw ValidationError("state: expected an object with \"dims\" and \"matrix\"");
    const Dims d = dims_from_json(j.at("dims"));
    try {
        return DensityMatrix::from_raw(matrix_from_json(j.at("matrix")), d);
    } catch (const DimensionError& e) {
        throw ValidationError(std::string("invalid state: ") + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("invalid state: ") + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
    if (!out) throw ValidationError("failed writing file: " + path);
}

/// Optional per-subsystem reference frames: {"a": matrix, "b": matrix}.
struct BasisPair {
    ReferenceBasis a;
    ReferenceBasis b;
};

inline BasisPair bases_from_json(const json& j, Dims dims) {
    BasisPair out{ReferenceBasis::computational(dims.a), ReferenceBasis::computational(dims.b)};
    if (!j.is_object()) throw ValidationError("basis file: expected an object with optional \"a\" and \"b\" frames");
    try {
        if (j.contains("a")) out.a = ReferenceBasis::from_frame(matrix_from_json(j.at("a"), "a"));
        if (j.contains("b")) out.b = ReferenceBasis::from_frame(matrix_from_json(j.at("b"), "b"));
    } catch (const DimensionError& e) {
        throw ValidationError(std::string("basis file: ") + e.what());
    }
    if (out.a.dim() != dims.a || out.b.dim() != dims.b)
        throw ValidationError("basis file: frame dimensions do not match state dims " + to_string(dims));
    return out;
}

using Channel = std::variant<KrausChannel, ChannelMixture>;

inline json channel_to_json(const KrausChannel& c) {
    json ops = json::array();
    for (const auto& k : c.ops()) ops.push_back(matrix_to_json(k));
    return json{{"kind", "kraus"}, {"ops", std::move(ops)}};
}

inline json channel_to_json(const ChannelMixture& c) {
    json comps = json::array();
    for (const auto& k : c.components()) comps.push_back(channel_to_json(k));
    return json{{"kind", "pio"}, {"weights", c.weights()}, {"components", std::move(comps)}};
}

inline json channel_to_json(const Channel& c) {
    return std::visit([](const auto& x) { return channel_to_json(x); }, c);
}

inline KrausChannel kraus_from_json(const json& j, const std::string& where) {
    if (!j.contains("ops") || !j.at("ops").is_array() || j.at("ops").empty())
        throw ValidationError(where + ": \"ops\" must be a non-empty array of matrices");
    std::vector<CMatrix> ops;
    for (std::size_t k = 0; k < j.at("ops").size(); ++k)
        ops.push_back(matrix_from_json(j.at("ops")[k], where + ".ops[" + std::to_string(k) + "]"));
    try {
        return KrausChannel(std::move(ops));
    } catch (const DimensionError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline Channel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ValidationError("channel: expected an object with a \"kind\" string");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "kraus") return kraus_from_json(j, "channel");
    if (kind != "pio") throw ValidationError("channel: unknown kind \"" + kind + "\"");
    if (!j.contains("weights") || !j.contains("components") || !j.at("components").is_array())
        throw ValidationError("channel: \"pio\" requires \"weights\" and \"components\"");
    std::vector<double> w;
    for (const auto& x : j.at("weights")) {
        if (!x.is_number()) throw ValidationError("channel: weights must be numbers");
        w.push_back(x.get<double>());
    }
    std::vector<KrausChannel> comps;
    for (std::size_t k = 0; k < j.at("components").size(); ++k)
        comps.push_back(kraus_from_json(j.at("components")[k], "channel.components[" + std::to_string(k) + "]"));
    return ChannelMixture(std::move(w), std::move(comps));
}

/// Stable CSV column order for MeasureReport.
inline const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols{"S_ab",   "S_a",    "S_b",       "I",       "C_r_ab", "C_r_a",
                                               "C_r_b",  "I_co",   "C_r_upper", "C_r_sym", "l1_cc"};
    return cols;
}

inline std::vector<std::optional<double>> report_values(const MeasureReport& r) {
    return {r.S_ab, r.S_a, r.S_b, r.I, r.C_r_ab, r.C_r_a, r.C_r_b, r.I_co, r.C_r_upper, r.C_r_sym, r.l1_cc};
}

inline json report_to_json(const MeasureReport& r) {
    json j = json::object();
    const auto& cols = report_columns();
    const auto vals = report_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k)
        if (vals[k]) j[cols[k]] = round12(*vals[k]);
    return j;
}

inline std::string report_csv_row(const MeasureReport& r) {
    std::string row;
    const auto vals = report_values(r);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (k) row += ',';
        if (vals[k]) row += format12(*vals[k]);
    }
    return row;
}

inline json trace_to_json(const OptimizationTrace& t) {
    json restarts = json::array();
    for (const auto& r : t.restarts)
        restarts.push_back({{"initial", r.initial},
                            {"final", r.final_params},
                            {"value", round12(r.final_value)},
                            {"iterations", r.iterations},
                            {"converged", r.converged}});
    return json{{"best_value", round12(t.best_value)}, {"best_params", t.best_params},
                {"best_restart", t.best_restart},      {"converged", t.converged},
                {"restarts", std::move(restarts)}};
}

}  // namespace dlc
