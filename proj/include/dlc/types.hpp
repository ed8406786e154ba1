#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dlc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Bipartite dimension split (d_a, d_b).
struct Dims {
    std::size_t a = 1;
    std::size_t b = 1;

    [[nodiscard]] constexpr std::size_t total() const noexcept { return a * b; }
    [[nodiscard]] constexpr Dims swapped() const noexcept { return {b, a}; }
    friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(const Dims& d) {
    return std::to_string(d.a) + "x" + std::to_string(d.b);
}

enum class Subsystem { A, B };

/// Shape or dimension disagreement between arguments.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input violates a validity invariant (state, basis, channel, file contents).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical tolerances shared by validation and entropy evaluation.
///
/// The process-wide instance returned by `tolerances()` is read by every
/// validating constructor. Front ends may adjust it once at startup; it must
/// not be mutated while computations are running.
struct Tolerances {
    double hermitian = 1e-10;  ///< max |m_ij - conj(m_ji)|
    double trace = 1e-10;      ///< max |Tr(rho) - 1|
    double eigen_clip = 1e-10; ///< eigenvalues in [-eigen_clip, 0) are clipped to 0
    double support = 1e-10;    ///< eigenvalue cutoff for support/rank decisions
    double unitary = 1e-9;     ///< max |U^dag U - I|
    double channel = 1e-9;     ///< max |sum K^dag K - I|
};

inline Tolerances& tolerances() {
    static Tolerances tol;
    return tol;
}

}  // namespace dlc
