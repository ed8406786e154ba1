#pragma once

// Quantum discord by basis search, the discordlike correlation of coherence
// in closed form, and the diagnostics that tie the two together.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dlc/channels.hpp"
#include "dlc/linalg.hpp"
#include "dlc/measures.hpp"
#include "dlc/optimize.hpp"
#include "dlc/states.hpp"

namespace dlc {

/// Largest d_a * d_b accepted by the basis-search paths.
inline constexpr std::size_t kMaxOptimizedDim = 64;

/// Orthonormal basis {|psi_k>} of H_a defining rank-one projectors.
class MeasurementBasis {
public:
    static MeasurementBasis computational(std::size_t d) { return MeasurementBasis(identity(d)); }

    static MeasurementBasis from_frame(CMatrix frame) {
        if (frame.rows() != frame.cols() || frame.rows() == 0)
            throw DimensionError("measurement basis frame must be a non-empty square matrix");
        if (!is_unitary(frame, tolerances().unitary)) throw ValidationError("measurement basis frame is not unitary");
        return MeasurementBasis(std::move(frame));
    }

    static MeasurementBasis from_angles(std::size_t d, const std::vector<double>& params) {
        return MeasurementBasis(givens_unitary(d, params));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(frame_.rows()); }
    [[nodiscard]] const CMatrix& frame() const noexcept { return frame_; }
    [[nodiscard]] ReferenceBasis as_reference() const { return ReferenceBasis::from_frame(frame_); }

private:
    explicit MeasurementBasis(CMatrix frame) : frame_(std::move(frame)) {}
    CMatrix frame_;
};

inline void require_basis_dim(const DensityMatrix& rho, std::size_t d, const char* what) {
    if (d != rho.dims().a)
        throw DimensionError(std::string(what) + ": basis dimension " + std::to_string(d) + " does not match d_a = " +
                             std::to_string(rho.dims().a));
}

/// I(rho | Pi^a) = S(rho_b) - sum_k p_k S(rho_k), branches with p_k = 0 skipped.
inline double measured_conditional_info(const DensityMatrix& rho, const MeasurementBasis& basis) {
    require_basis_dim(rho, basis.dim(), "measured_conditional_info");
    const Dims d = rho.dims();
    const auto db = static_cast<Eigen::Index>(d.b);
    const CMatrix rotated = conjugate_local_a(rho.matrix(), d, basis.frame().adjoint());
    double conditional = 0.0;
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d.a); ++k) {
        const CMatrix branch = rotated.block(k * db, k * db, db, db);
        const double p = branch.trace().real();
        if (p <= 1e-15) continue;
        conditional += p * entropy(CMatrix(branch / p));
    }
    return entropy(partial_trace(rho.matrix(), d, Subsystem::B)) - conditional;
}

namespace detail {

inline double discord_at_frame(const CMatrix& rho, Dims dims, double mutual_info, const ReferenceBasis& frame) {
    return mutual_info - mutual_information(dephase_local(rho, dims, frame), dims);
}

// D^a_c in reference frame `basis_a`, B measured in its computational basis.
inline double dac_at(const CMatrix& rho, Dims dims, const ReferenceBasis& basis_a) {
    const auto basis_b = ReferenceBasis::computational(dims.b);
    return correlated_coherence(rho, dims, basis_a, basis_b) -
           correlated_coherence(dephase_local(rho, dims, basis_a), dims, basis_a, basis_b);
}

inline void require_optimizable(const DensityMatrix& rho) {
    if (rho.dim() > kMaxOptimizedDim)
        throw DimensionError("basis optimization is limited to d_a * d_b <= " + std::to_string(kMaxOptimizedDim));
}

}  // namespace detail

/// I(rho) - I[(Pi^a (x) 1) rho].
inline double discord_at_basis(const DensityMatrix& rho, const MeasurementBasis& basis) {
    require_basis_dim(rho, basis.dim(), "discord_at_basis");
    return detail::discord_at_frame(rho.matrix(), rho.dims(), mutual_information(rho), basis.as_reference());
}

struct DiscordResult {
    double value = 0.0;
    MeasurementBasis basis = MeasurementBasis::computational(1);
    OptimizationTrace trace;
};

/// Minimum of discord_at_basis over bases found by multi-start descent; an
/// upper bound on the true minimum.
inline DiscordResult discord(const DensityMatrix& rho, const OptimizerSettings& cfg = {}) {
    detail::require_optimizable(rho);
    const Dims dims = rho.dims();
    const double mi = mutual_information(rho);
    const auto objective = [&](const std::vector<double>& x) {
        return detail::discord_at_frame(rho.matrix(), dims, mi, ReferenceBasis::from_frame(givens_unitary(dims.a, x)));
    };
    auto trace = multistart_minimize(objective, givens_param_count(dims.a), cfg);
    DiscordResult out{trace.best_value, MeasurementBasis::from_angles(dims.a, trace.best_params), std::move(trace)};
    return out;
}

/// D^a_c = I_co(rho) - I_co[(Delta (x) 1) rho]: the canonical rank-one PPIO
/// attains the minimum over all rank-one PPIOs.
inline double dac(const DensityMatrix& rho, const ReferenceBasis& basis_a) {
    require_basis_dim(rho, basis_a.dim(), "dac");
    return detail::dac_at(rho.matrix(), rho.dims(), basis_a);
}

inline double dac(const DensityMatrix& rho) { return dac(rho, ReferenceBasis::computational(rho.dims().a)); }

/// I_co(rho) - I_co[(K (x) 1) rho] for one local channel on A (computational frames).
inline double ico_drop(const DensityMatrix& rho, const KrausChannel& local_channel_a) {
    const Dims d = rho.dims();
    if (local_channel_a.in_dim() != d.a || local_channel_a.out_dim() != d.a)
        throw DimensionError("ico_drop: channel does not act on subsystem A");
    const CMatrix out = local_channel_a.local_a(d.b).apply(rho.matrix());
    const auto ba = ReferenceBasis::computational(d.a);
    const auto bb = ReferenceBasis::computational(d.b);
    return correlated_coherence(rho.matrix(), d, ba, bb) - correlated_coherence(out, d, ba, bb);
}

/// Max |ico_drop(rho, PPIO) - dac(rho)| over random rank-one PPIOs whose
/// level map j -> perm_j(j) is a bijection.
inline double dac_invariance_check(const DensityMatrix& rho, std::size_t trials, std::uint64_t seed) {
    const double reference = dac(rho);
    const std::size_t da = rho.dims().a;
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        CounterRng rng(derive_seed(seed, t));
        const auto us = random_rank_one_unitaries(da, rng, /*bijective=*/true);
        worst = std::max(worst, std::abs(ico_drop(rho, make_rank_one_ppio(da, us)) - reference));
    }
    return worst;
}

/// I_co(rho) - I_co[(Delta_a (x) Delta_b) rho].
inline double dac_symmetric(const DensityMatrix& rho, const ReferenceBasis& basis_a, const ReferenceBasis& basis_b) {
    const Dims d = rho.dims();
    require_bases(d, basis_a, basis_b);
    const CMatrix dephased = dephase(rho.matrix(), tensor(basis_a, basis_b));
    return correlated_coherence(rho.matrix(), d, basis_a, basis_b) -
           correlated_coherence(dephased, d, basis_a, basis_b);
}

inline double dac_symmetric(const DensityMatrix& rho) {
    return dac_symmetric(rho, ReferenceBasis::computational(rho.dims().a),
                         ReferenceBasis::computational(rho.dims().b));
}

struct ReferenceSearchResult {
    double value = 0.0;
    ReferenceBasis basis = ReferenceBasis::computational(1);
    OptimizationTrace trace;
};

/// Minimum of D^a_c over reference frames of A, searched with the same
/// parameterization and optimizer as discord().
inline ReferenceSearchResult theorem2_minimize(const DensityMatrix& rho, const OptimizerSettings& cfg = {}) {
    detail::require_optimizable(rho);
    const Dims dims = rho.dims();
    const auto objective = [&](const std::vector<double>& x) {
        return detail::dac_at(rho.matrix(), dims, ReferenceBasis::from_frame(givens_unitary(dims.a, x)));
    };
    auto trace = multistart_minimize(objective, givens_param_count(dims.a), cfg);
    ReferenceSearchResult out{trace.best_value, ReferenceBasis::from_frame(givens_unitary(dims.a, trace.best_params)),
                              std::move(trace)};
    return out;
}

inline void require_rank_one_ppio(const DensityMatrix& rho, const KrausChannel& ppio) {
    if (ppio.in_dim() != rho.dims().a || ppio.out_dim() != rho.dims().a)
        throw DimensionError("channel does not act on subsystem A");
    if (!classify(ppio, ReferenceBasis::computational(rho.dims().a)).contains(ChannelLabel::RankOnePPIO))
        throw ValidationError("channel is not a rank-one PPIO in the reference basis");
}

struct Theorem1Gap {
    double gap = 0.0;      // I_co(rho) - I_co(PPIO(rho))
    double mi_drop = 0.0;  // I(rho) - I[(Pi^a (x) 1) rho], Pi^a the dephasing by the same projectors
    bool monotone = false;      // gap >= -tol
    bool strengthened = false;  // gap >= mi_drop - tol
};

inline Theorem1Gap theorem1_gap(const DensityMatrix& rho, const KrausChannel& ppio, double tol = 1e-9) {
    require_rank_one_ppio(rho, ppio);
    Theorem1Gap g;
    g.gap = ico_drop(rho, ppio);
    const Dims d = rho.dims();
    g.mi_drop = mutual_information(rho) -
                mutual_information(dephase_local(rho.matrix(), d, ReferenceBasis::computational(d.a)), d);
    g.monotone = g.gap >= -tol;
    g.strengthened = g.gap >= g.mi_drop - tol;
    return g;
}

/// Gamma = S[Delta(rho_ab)] - S[Delta(rho_a)] - S[Delta(rho'_ab)] + S[Delta(rho'_a)],
/// rho' the PPIO output; I_co drop = I(rho) - I(rho') + Gamma.
inline double gamma_diagnostic(const DensityMatrix& rho, const KrausChannel& ppio) {
    require_rank_one_ppio(rho, ppio);
    const Dims d = rho.dims();
    const CMatrix out = ppio.local_a(d.b).apply(rho.matrix());
    const auto diag_entropy = [](const CMatrix& m) { return entropy_of_spectrum(m.diagonal().real()); };
    return diag_entropy(rho.matrix()) - diag_entropy(partial_trace(rho.matrix(), d, Subsystem::A)) -
           diag_entropy(out) + diag_entropy(partial_trace(out, d, Subsystem::A));
}

enum class ZeroSet { Dac, DacSymmetric, Discord };

struct ZeroSetMembership {
    bool member = false;
    double value = 0.0;      // the measure that decided membership
    double threshold = 0.0;
    std::optional<MeasurementBasis> certificate;  // minimizing basis, discord only
};

inline ZeroSetMembership in_zero_set(const DensityMatrix& rho, ZeroSet which, const OptimizerSettings& cfg = {}) {
    ZeroSetMembership m;
    switch (which) {
        case ZeroSet::Dac:
            m.value = dac(rho);
            m.threshold = 1e-9;
            break;
        case ZeroSet::DacSymmetric:
            m.value = dac_symmetric(rho);
            m.threshold = 1e-9;
            break;
        case ZeroSet::Discord: {
            auto r = theorem2_minimize(rho, cfg);
            m.value = r.value;
            m.threshold = 1e-6;
            m.certificate = MeasurementBasis::from_frame(r.basis.frame());
            break;
        }
    }
    m.member = m.value <= m.threshold;
    return m;
}

}  // namespace dlc
