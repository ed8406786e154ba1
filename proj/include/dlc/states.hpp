#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dlc/linalg.hpp"
#include "dlc/random.hpp"

namespace dlc {

/// Validated bipartite density matrix. Immutable once constructed.
class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace, positivity and the dimension split.
    static DensityMatrix from_raw(CMatrix mat, Dims dims) {
        if (dims.a == 0 || dims.b == 0) throw DimensionError("subsystem dimensions must be >= 1");
        if (mat.rows() != mat.cols())
            throw DimensionError("state matrix is " + std::to_string(mat.rows()) + "x" +
                                 std::to_string(mat.cols()) + ", not square");
        if (static_cast<std::size_t>(mat.rows()) != dims.total())
            throw DimensionError("state matrix dimension " + std::to_string(mat.rows()) +
                                 " does not match dims " + to_string(dims));
        for (Eigen::Index j = 0; j < mat.cols(); ++j)
            for (Eigen::Index i = 0; i < mat.rows(); ++i)
                if (!std::isfinite(mat(i, j).real()) || !std::isfinite(mat(i, j).imag()))
                    throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") is not finite");
        const auto& tol = tolerances();
        const auto defect = hermitian_defect(mat);
        if (defect.value > tol.hermitian) {
            std::ostringstream os;
            os << "not Hermitian: entry (" << defect.row << "," << defect.col
               << ") differs from the conjugate of (" << defect.col << "," << defect.row << ") by "
               << defect.value << ", exceeds tolerance " << tol.hermitian;
            throw ValidationError(os.str());
        }
        const double tr = mat.trace().real();
        if (std::abs(tr - 1.0) > tol.trace) {
            std::ostringstream os;
            os << "trace = " << tr << " exceeds tolerance (|trace - 1| > " << tol.trace << ")";
            throw ValidationError(os.str());
        }
        mat = 0.5 * (mat + mat.adjoint()).eval();
        const double lowest = hermitian_eigenvalues(mat).minCoeff();
        if (lowest < -tol.eigen_clip) {
            std::ostringstream os;
            os << "negative eigenvalue " << lowest << " exceeds tolerance " << tol.eigen_clip;
            throw ValidationError(os.str());
        }
        return DensityMatrix(std::move(mat), dims);
    }

    [[nodiscard]] const CMatrix& matrix() const noexcept { return mat_; }
    [[nodiscard]] Dims dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dims_.total(); }

    /// The same operator viewed as a state on B(x)A.
    [[nodiscard]] DensityMatrix swapped() const {
        return DensityMatrix(swap_subsystems(mat_, dims_), dims_.swapped());
    }

private:
    DensityMatrix(CMatrix mat, Dims dims) : mat_(std::move(mat)), dims_(dims) {}

    CMatrix mat_;
    Dims dims_;
};

/// Single-system state helper: dims (d, 1).
inline DensityMatrix single(const CMatrix& mat) {
    return DensityMatrix::from_raw(mat, {static_cast<std::size_t>(mat.rows()), 1});
}

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

inline CVector ket(std::size_t dim, std::size_t index) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

inline CVector ket_plus() { return CVector::Constant(2, kInvSqrt2); }

inline CVector ket_minus() {
    CVector v(2);
    v << kInvSqrt2, -kInvSqrt2;
    return v;
}

/// |Phi+> = (|00> + |11>)/sqrt 2 projector on 2x2.
inline DensityMatrix bell_phi_plus() {
    CVector v = CVector::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = kInvSqrt2;
    return DensityMatrix::from_raw(projector(v), {2, 2});
}

inline DensityMatrix maximally_mixed(Dims dims) {
    return DensityMatrix::from_raw(identity(dims.total()) / static_cast<double>(dims.total()), dims);
}

inline DensityMatrix product(const CMatrix& rho_a, const CMatrix& rho_b) {
    return DensityMatrix::from_raw(tensor(rho_a, rho_b),
                                   {static_cast<std::size_t>(rho_a.rows()), static_cast<std::size_t>(rho_b.rows())});
}

inline void require_probabilities(std::span<const double> probs) {
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0) || !std::isfinite(probs[i]))
            throw ValidationError("probability " + std::to_string(i) + " is negative or not finite");
        sum += probs[i];
    }
    if (probs.empty() || std::abs(sum - 1.0) > tolerances().trace)
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
}

/// Sum_i p_i |i><i| (x) rho_i with {|i>} the columns of `basis_a`.
inline DensityMatrix classical_quantum(std::span<const double> probs, const ReferenceBasis& basis_a,
                                       std::span<const CMatrix> blocks) {
    require_probabilities(probs);
    if (probs.size() != blocks.size())
        throw DimensionError("classical_quantum: " + std::to_string(probs.size()) + " probabilities but " +
                             std::to_string(blocks.size()) + " blocks");
    if (probs.size() > basis_a.dim())
        throw DimensionError("classical_quantum: more branches than basis vectors on A");
    const auto db = static_cast<std::size_t>(blocks.front().rows());
    const Dims dims{basis_a.dim(), db};
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dims.total()), static_cast<Eigen::Index>(dims.total()));
    for (std::size_t i = 0; i < probs.size(); ++i) {
        require_square(blocks[i], db, "classical_quantum block");
        const CVector v = basis_a.frame().col(static_cast<Eigen::Index>(i));
        out += probs[i] * tensor(projector(v), blocks[i]);
    }
    return DensityMatrix::from_raw(std::move(out), dims);
}

inline DensityMatrix werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p must lie in [0, 1]");
    return DensityMatrix::from_raw(p * bell_phi_plus().matrix() + (1.0 - p) * identity(4) / 4.0, {2, 2});
}

enum class Ensemble { HaarPure, GinibreMixed };

inline std::optional<Ensemble> parse_ensemble(const std::string& name) {
    if (name == "haar-pure") return Ensemble::HaarPure;
    if (name == "ginibre-mixed") return Ensemble::GinibreMixed;
    return std::nullopt;
}

inline std::string to_string(Ensemble e) { return e == Ensemble::HaarPure ? "haar-pure" : "ginibre-mixed"; }

/// Single-system state from one rng stream (no validation).
inline CMatrix random_density(std::size_t d, Ensemble ensemble, CounterRng& rng) {
    if (ensemble == Ensemble::HaarPure) {
        CVector v = rng.ginibre(d, 1).col(0);
        v.normalize();
        return projector(v);
    }
    const CMatrix g = rng.ginibre(d, d);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

inline DensityMatrix random_state(std::size_t d_a, std::size_t d_b, Ensemble ensemble, std::uint64_t seed) {
    if (d_a == 0 || d_b == 0) throw DimensionError("random_state: dimensions must be >= 1");
    CounterRng rng(seed);
    return DensityMatrix::from_raw(random_density(d_a * d_b, ensemble, rng), {d_a, d_b});
}

inline std::pair<DensityMatrix, DensityMatrix> marginals(const DensityMatrix& rho) {
    const Dims d = rho.dims();
    return {DensityMatrix::from_raw(partial_trace(rho.matrix(), d, Subsystem::A), {d.a, 1}),
            DensityMatrix::from_raw(partial_trace(rho.matrix(), d, Subsystem::B), {d.b, 1})};
}

/// Random CQ state in `basis_a`: exponential weights, one Ginibre-mixed B state per A level.
inline DensityMatrix random_cq_state(Dims dims, const ReferenceBasis& basis_a, CounterRng& rng) {
    std::vector<double> p(dims.a);
    double sum = 0.0;
    for (auto& x : p) sum += (x = -std::log(1.0 - rng.uniform()));
    for (auto& x : p) x /= sum;
    std::vector<CMatrix> blocks;
    blocks.reserve(dims.a);
    for (std::size_t i = 0; i < dims.a; ++i) blocks.push_back(random_density(dims.b, Ensemble::GinibreMixed, rng));
    return classical_quantum(p, basis_a, blocks);
}

}  // namespace dlc
