#pragma once

// Dense complex-matrix kernel: Kronecker products, partial traces, Hermitian
// eigendecomposition and dephasing in an arbitrary reference frame.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dlc/types.hpp"

namespace dlc {

inline bool all_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline CMatrix identity(std::size_t d) {
    return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

/// Kronecker product; row i of `a` indexes the slow axis.
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline void require_square(const CMatrix& m, std::size_t dim, const char* what) {
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim) {
        std::ostringstream os;
        os << what << ": expected " << dim << "x" << dim << " matrix, got " << m.rows() << "x"
           << m.cols();
        throw DimensionError(os.str());
    }
}

inline CMatrix partial_trace(const CMatrix& m, Dims dims, Subsystem keep) {
    require_square(m, dims.total(), "partial_trace");
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    if (keep == Subsystem::A) {
        CMatrix out(da, da);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
        return out;
    }
    CMatrix out = CMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
}

/// Largest entrywise deviation |m_ij - conj(m_ji)| and where it occurs.
struct HermitianDefect {
    double value = 0.0;
    Eigen::Index row = 0;
    Eigen::Index col = 0;
};

inline HermitianDefect hermitian_defect(const CMatrix& m) {
    HermitianDefect worst;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            const double d = std::abs(m(i, j) - std::conj(m(j, i)));
            if (d > worst.value) worst = {d, i, j};
        }
    return worst;
}

struct HermitianEig {
    RVector values;   // descending
    CMatrix vectors;  // columns, unitary
};

inline HermitianEig hermitian_eig(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eig: matrix is not square");
    const auto defect = hermitian_defect(m);
    if (defect.value > tolerances().hermitian) {
        std::ostringstream os;
        os << "hermitian_eig: matrix is not Hermitian at (" << defect.row << "," << defect.col
           << "), deviation " << defect.value;
        throw ValidationError(os.str());
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    const Eigen::Index n = m.rows();
    HermitianEig out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

inline RVector hermitian_eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
    const auto defect = hermitian_defect(m);
    if (defect.value > tolerances().hermitian) {
        std::ostringstream os;
        os << "matrix is not Hermitian at (" << defect.row << "," << defect.col << "), deviation "
           << defect.value;
        throw ValidationError(os.str());
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    RVector asc = Eigen::SelfAdjointEigenSolver<CMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return asc.reverse();
}

inline bool is_diagonal(const CMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

inline bool is_unitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

/// An orthonormal frame whose columns define the incoherent basis of a space.
class ReferenceBasis {
public:
    static ReferenceBasis computational(std::size_t dim) {
        ReferenceBasis b;
        b.frame_ = identity(dim);
        b.computational_ = true;
        return b;
    }

    /// Throws ValidationError unless `frame` is unitary within tolerance.
    static ReferenceBasis from_frame(CMatrix frame) {
        if (frame.rows() != frame.cols() || frame.rows() == 0)
            throw DimensionError("reference basis frame must be a non-empty square matrix");
        if (!all_finite(frame)) throw ValidationError("reference basis frame has non-finite entries");
        if (!is_unitary(frame, tolerances().unitary))
            throw ValidationError("reference basis frame is not unitary");
        ReferenceBasis b;
        b.computational_ = frame.isIdentity(0.0);
        b.frame_ = std::move(frame);
        return b;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(frame_.rows()); }
    [[nodiscard]] const CMatrix& frame() const noexcept { return frame_; }
    [[nodiscard]] bool is_computational() const noexcept { return computational_; }

    friend ReferenceBasis tensor(const ReferenceBasis& a, const ReferenceBasis& b) {
        ReferenceBasis out;
        out.frame_ = tensor(a.frame_, b.frame_);
        out.computational_ = a.computational_ && b.computational_;
        return out;
    }

private:
    ReferenceBasis() = default;
    CMatrix frame_;
    bool computational_ = false;
};

/// Sum_i |i><i| m |i><i| with {|i>} the columns of the basis frame.
inline CMatrix dephase(const CMatrix& m, const ReferenceBasis& basis) {
    require_square(m, basis.dim(), "dephase");
    if (basis.is_computational()) return m.diagonal().asDiagonal();
    const CMatrix& f = basis.frame();
    const CMatrix inframe = f.adjoint() * m * f;
    return f * inframe.diagonal().asDiagonal() * f.adjoint();
}

/// (U_a (x) 1) m (U_a (x) 1)^dag
inline CMatrix conjugate_local_a(const CMatrix& m, Dims dims, const CMatrix& ua) {
    require_square(m, dims.total(), "conjugate_local_a");
    require_square(ua, dims.a, "conjugate_local_a unitary");
    const CMatrix u = tensor(ua, identity(dims.b));
    return u * m * u.adjoint();
}

/// (Delta_a (x) 1_b) m: zeroes the off-diagonal A blocks in the A reference frame.
inline CMatrix dephase_local(const CMatrix& m, Dims dims, const ReferenceBasis& basis_a) {
    require_square(m, dims.total(), "dephase_local");
    if (basis_a.dim() != dims.a) throw DimensionError("dephase_local: basis dimension does not match d_a");
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    const auto zero_off_blocks = [&](const CMatrix& x) {
        CMatrix out = CMatrix::Zero(x.rows(), x.cols());
        for (Eigen::Index i = 0; i < da; ++i)
            out.block(i * db, i * db, db, db) = x.block(i * db, i * db, db, db);
        return out;
    };
    if (basis_a.is_computational()) return zero_off_blocks(m);
    const CMatrix inframe = conjugate_local_a(m, dims, basis_a.frame().adjoint());
    return conjugate_local_a(zero_off_blocks(inframe), dims, basis_a.frame());
}

/// Reorders a bipartite operator from A(x)B to B(x)A.
inline CMatrix swap_subsystems(const CMatrix& m, Dims dims) {
    require_square(m, dims.total(), "swap_subsystems");
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    CMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index k = 0; k < db; ++k)
            for (Eigen::Index j = 0; j < da; ++j)
                for (Eigen::Index l = 0; l < db; ++l) out(k * da + i, l * da + j) = m(i * db + k, j * db + l);
    return out;
}

}  // namespace dlc
