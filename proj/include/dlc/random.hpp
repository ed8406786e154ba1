#pragma once

// Counter-based random streams. Every draw is a pure function of
// (key, counter), so sequences are identical across platforms and standard
// library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "dlc/linalg.hpp"

namespace dlc {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for the `index`-th child of `root` (e.g. one per verification trial).
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(root) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : key_(splitmix64(seed ^ 0xD1B54A32D192ED03ull)) {}

    std::uint64_t next_u64() noexcept { return splitmix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) noexcept {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Standard normal via Box-Muller.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Complex Gaussian with E|z|^2 = 1.
    Complex complex_normal() noexcept {
        const double re = normal();
        const double im = normal();
        return {re * kInvSqrt2, im * kInvSqrt2};
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(i)]);
        return p;
    }

    CMatrix ginibre(std::size_t rows, std::size_t cols) {
        CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = complex_normal();
        return g;
    }

    /// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
    CMatrix haar_unitary(std::size_t d) {
        const CMatrix g = ginibre(d, d);
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ() * identity(d);
        const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index k = 0; k < q.cols(); ++k) {
            const double mag = std::abs(r(k, k));
            if (mag > 0.0) q.col(k) *= r(k, k) / mag;
        }
        return q;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dlc
