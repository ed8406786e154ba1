#pragma once

// Entropic and coherence quantities. All logarithms are base 2.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dlc/linalg.hpp"
#include "dlc/states.hpp"

namespace dlc {

/// -sum p log2 p over a spectrum, clipping tiny negative values.
inline double entropy_of_spectrum(const RVector& spectrum) {
    const double clip = tolerances().eigen_clip;
    double s = 0.0;
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
        const double p = spectrum(k);
        if (p < -clip) {
            std::ostringstream os;
            os << "negative eigenvalue " << p << " exceeds tolerance " << clip;
            throw ValidationError(os.str());
        }
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

/// Von Neumann entropy of a state-like matrix.
inline double entropy(const CMatrix& rho) {
    if (rho.rows() != rho.cols()) throw DimensionError("entropy: matrix is not square");
    if (is_diagonal(rho)) return entropy_of_spectrum(rho.diagonal().real());
    return entropy_of_spectrum(hermitian_eigenvalues(rho));
}

inline double entropy(const DensityMatrix& rho) { return entropy(rho.matrix()); }

/// S(rho || sigma); +infinity when supp(rho) is not contained in supp(sigma).
inline double relative_entropy(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionError("relative_entropy: dimension mismatch");
    const double cutoff = tolerances().support;
    const auto eig = hermitian_eig(sigma);
    double cross = 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const CVector v = eig.vectors.col(k);
        const double weight = (v.adjoint() * rho * v)(0, 0).real();
        if (eig.values(k) <= cutoff) {
            if (weight > cutoff) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross -= weight * std::log2(eig.values(k));
    }
    return cross - entropy(rho);
}

inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return relative_entropy(rho.matrix(), sigma.matrix());
}

/// C_r(rho) = S[Delta(rho)] - S(rho).
inline double coherence_rel_ent(const CMatrix& rho, const ReferenceBasis& basis) {
    return entropy(dephase(rho, basis)) - entropy(rho);
}

inline double coherence_rel_ent(const DensityMatrix& rho, const ReferenceBasis& basis) {
    return coherence_rel_ent(rho.matrix(), basis);
}

inline double mutual_information(const CMatrix& rho, Dims dims) {
    return entropy(partial_trace(rho, dims, Subsystem::A)) + entropy(partial_trace(rho, dims, Subsystem::B)) -
           entropy(rho);
}

inline double mutual_information(const DensityMatrix& rho) { return mutual_information(rho.matrix(), rho.dims()); }

inline void require_bases(Dims dims, const ReferenceBasis& basis_a, const ReferenceBasis& basis_b) {
    if (basis_a.dim() != dims.a || basis_b.dim() != dims.b)
        throw DimensionError("reference bases (" + std::to_string(basis_a.dim()) + "," +
                             std::to_string(basis_b.dim()) + ") do not match dims " + to_string(dims));
}

/// I_co = C_r(rho_ab) - C_r(rho_a) - C_r(rho_b), joint reference basis = basis_a (x) basis_b.
inline double correlated_coherence(const CMatrix& rho, Dims dims, const ReferenceBasis& basis_a,
                                   const ReferenceBasis& basis_b) {
    require_bases(dims, basis_a, basis_b);
    return coherence_rel_ent(rho, tensor(basis_a, basis_b)) -
           coherence_rel_ent(partial_trace(rho, dims, Subsystem::A), basis_a) -
           coherence_rel_ent(partial_trace(rho, dims, Subsystem::B), basis_b);
}

inline double correlated_coherence(const DensityMatrix& rho, const ReferenceBasis& basis_a,
                                   const ReferenceBasis& basis_b) {
    return correlated_coherence(rho.matrix(), rho.dims(), basis_a, basis_b);
}

inline double correlated_coherence(const DensityMatrix& rho) {
    return correlated_coherence(rho, ReferenceBasis::computational(rho.dims().a),
                                ReferenceBasis::computational(rho.dims().b));
}

/// Relative entropy distance to the classical-quantum set: S[(Delta (x) 1)rho] - S(rho).
inline double c_r_upper(const DensityMatrix& rho, const ReferenceBasis& basis_a) {
    return entropy(dephase_local(rho.matrix(), rho.dims(), basis_a)) - entropy(rho);
}

/// Symmetric variant; coincides with C_r in the joint reference basis.
inline double c_r_symmetric(const DensityMatrix& rho, const ReferenceBasis& basis_ab) {
    return coherence_rel_ent(rho, basis_ab);
}

/// l1 norm of coherence in the computational basis.
inline double l1_coherence(const CMatrix& rho) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

inline double l1_correlated_coherence(const DensityMatrix& rho) {
    const auto d = rho.dims();
    return l1_coherence(rho.matrix()) - l1_coherence(partial_trace(rho.matrix(), d, Subsystem::A)) -
           l1_coherence(partial_trace(rho.matrix(), d, Subsystem::B));
}

/// Scalar quantities of one state, in bits.
struct MeasureReport {
    double S_ab = 0, S_a = 0, S_b = 0, I = 0;
    double C_r_ab = 0, C_r_a = 0, C_r_b = 0, I_co = 0;
    double C_r_upper = 0, C_r_sym = 0;
    std::optional<double> l1_cc;
};

/// Every report quantity in one pass; the state and marginal entropies are
/// evaluated once and shared.
inline MeasureReport measure_report(const DensityMatrix& rho, const ReferenceBasis& basis_a,
                                    const ReferenceBasis& basis_b, bool with_l1 = false) {
    const Dims d = rho.dims();
    require_bases(d, basis_a, basis_b);
    const CMatrix rho_a = partial_trace(rho.matrix(), d, Subsystem::A);
    const CMatrix rho_b = partial_trace(rho.matrix(), d, Subsystem::B);
    const ReferenceBasis joint = tensor(basis_a, basis_b);

    MeasureReport r;
    r.S_ab = entropy(rho.matrix());
    r.S_a = entropy(rho_a);
    r.S_b = entropy(rho_b);
    r.I = r.S_a + r.S_b - r.S_ab;
    r.C_r_ab = entropy(dephase(rho.matrix(), joint)) - r.S_ab;
    r.C_r_a = entropy(dephase(rho_a, basis_a)) - r.S_a;
    r.C_r_b = entropy(dephase(rho_b, basis_b)) - r.S_b;
    r.I_co = r.C_r_ab - r.C_r_a - r.C_r_b;
    r.C_r_upper = entropy(dephase_local(rho.matrix(), d, basis_a)) - r.S_ab;
    r.C_r_sym = r.C_r_ab;
    if (with_l1) r.l1_cc = l1_correlated_coherence(rho);
    return r;
}

inline MeasureReport measure_report(const DensityMatrix& rho, bool with_l1 = false) {
    return measure_report(rho, ReferenceBasis::computational(rho.dims().a),
                          ReferenceBasis::computational(rho.dims().b), with_l1);
}

}  // namespace dlc
