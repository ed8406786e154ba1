#pragma once

// Kraus channels and the incoherent families built from permutation-phase
// unitaries: IUOs, PPIOs (one Kraus set K_j = U_j P_j), rank-one PPIOs, PIOs
// (convex mixtures of PPIOs) and factorizable free operations U_a (x) B_j.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dlc/linalg.hpp"
#include "dlc/random.hpp"
#include "dlc/states.hpp"

namespace dlc {

/// U = sum_y exp(i theta_y) |perm(y)><y|.
class IncoherentUnitary {
public:
    IncoherentUnitary(std::vector<std::size_t> perm, std::vector<double> phases)
        : perm_(std::move(perm)), phases_(std::move(phases)) {
        if (phases_.size() != perm_.size())
            throw ValidationError("incoherent unitary: " + std::to_string(phases_.size()) + " phases for dimension " +
                                  std::to_string(perm_.size()));
        std::vector<bool> seen(perm_.size(), false);
        for (std::size_t y = 0; y < perm_.size(); ++y) {
            if (perm_[y] >= perm_.size() || seen[perm_[y]])
                throw ValidationError("incoherent unitary: invalid permutation at position " + std::to_string(y));
            seen[perm_[y]] = true;
            if (!std::isfinite(phases_[y])) throw ValidationError("incoherent unitary: non-finite phase");
        }
    }

    static IncoherentUnitary identity(std::size_t d) {
        std::vector<std::size_t> p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = i;
        return {std::move(p), std::vector<double>(d, 0.0)};
    }

    /// Permutation-phase unitary swapping levels i and j.
    static IncoherentUnitary swap(std::size_t d, std::size_t i, std::size_t j) {
        auto u = identity(d);
        std::swap(u.perm_[i], u.perm_[j]);
        return u;
    }

    /// Uniform random permutation with i.i.d. uniform phases in [0, 2pi).
    static IncoherentUnitary random(std::size_t d, CounterRng& rng) {
        auto p = rng.permutation(d);
        std::vector<double> th(d);
        for (auto& t : th) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return {std::move(p), std::move(th)};
    }

    [[nodiscard]] std::size_t dim() const noexcept { return perm_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
    [[nodiscard]] const std::vector<double>& phases() const noexcept { return phases_; }

    [[nodiscard]] CMatrix matrix() const {
        CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (std::size_t y = 0; y < dim(); ++y)
            u(static_cast<Eigen::Index>(perm_[y]), static_cast<Eigen::Index>(y)) = std::polar(1.0, phases_[y]);
        return u;
    }

private:
    std::vector<std::size_t> perm_;
    std::vector<double> phases_;
};

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
public:
    KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw ValidationError("channel has no Kraus operators");
        in_dim_ = static_cast<std::size_t>(ops_.front().cols());
        out_dim_ = static_cast<std::size_t>(ops_.front().rows());
        CMatrix sum = CMatrix::Zero(static_cast<Eigen::Index>(in_dim_), static_cast<Eigen::Index>(in_dim_));
        for (std::size_t j = 0; j < ops_.size(); ++j) {
            const auto& k = ops_[j];
            if (static_cast<std::size_t>(k.cols()) != in_dim_ || static_cast<std::size_t>(k.rows()) != out_dim_)
                throw DimensionError("Kraus operator " + std::to_string(j) + " has inconsistent shape");
            if (!all_finite(k)) throw ValidationError("Kraus operator " + std::to_string(j) + " has non-finite entries");
            sum += k.adjoint() * k;
        }
        const double dev = max_abs(sum - identity(in_dim_));
        if (dev > tolerances().channel) {
            std::ostringstream os;
            os << "channel is not trace preserving: |sum K^dag K - I| = " << dev << " exceeds tolerance "
               << tolerances().channel;
            throw ValidationError(os.str());
        }
    }

    [[nodiscard]] const std::vector<CMatrix>& ops() const noexcept { return ops_; }
    [[nodiscard]] std::size_t in_dim() const noexcept { return in_dim_; }
    [[nodiscard]] std::size_t out_dim() const noexcept { return out_dim_; }

    [[nodiscard]] CMatrix apply(const CMatrix& rho) const {
        require_square(rho, in_dim_, "channel input");
        CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_dim_), static_cast<Eigen::Index>(out_dim_));
        for (const auto& k : ops_) out.noalias() += k * rho * k.adjoint();
        return out;
    }

    /// Channel on A lifted to A(x)B as K_j (x) 1_b.
    [[nodiscard]] KrausChannel local_a(std::size_t d_b) const {
        std::vector<CMatrix> lifted;
        lifted.reserve(ops_.size());
        for (const auto& k : ops_) lifted.push_back(tensor(k, dlc::identity(d_b)));
        return KrausChannel(std::move(lifted));
    }

private:
    std::vector<CMatrix> ops_;
    std::size_t in_dim_ = 0;
    std::size_t out_dim_ = 0;
};

/// Applies a channel to a validated state; the output is validated again.
inline DensityMatrix apply(const KrausChannel& chan, const DensityMatrix& rho) {
    if (chan.in_dim() != rho.dim() || chan.out_dim() != rho.dim())
        throw DimensionError("apply: channel dimension does not match state dimension " + std::to_string(rho.dim()));
    return DensityMatrix::from_raw(chan.apply(rho.matrix()), rho.dims());
}

/// Weighted list of channels sum_i t_i E_i, kept unflattened.
class ChannelMixture {
public:
    ChannelMixture(std::vector<double> weights, std::vector<KrausChannel> components)
        : weights_(std::move(weights)), components_(std::move(components)) {
        if (weights_.size() != components_.size() || components_.empty())
            throw ValidationError("mixture: weight count does not match component count");
        for (double t : weights_)
            if (!(t > 0.0)) throw ValidationError("mixture: weights must be positive");
        double sum = 0.0;
        for (double t : weights_) sum += t;
        if (std::abs(sum - 1.0) > tolerances().trace)
            throw ValidationError("mixture: weights sum to " + std::to_string(sum) + ", expected 1");
        for (const auto& c : components_)
            if (c.in_dim() != components_.front().in_dim() || c.out_dim() != components_.front().out_dim())
                throw DimensionError("mixture: components act on different spaces");
    }

    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] const std::vector<KrausChannel>& components() const noexcept { return components_; }
    [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }

    [[nodiscard]] CMatrix apply(const CMatrix& rho) const {
        CMatrix out = weights_[0] * components_[0].apply(rho);
        for (std::size_t i = 1; i < components_.size(); ++i) out += weights_[i] * components_[i].apply(rho);
        return out;
    }

private:
    std::vector<double> weights_;
    std::vector<KrausChannel> components_;
};

inline DensityMatrix apply(const ChannelMixture& chan, const DensityMatrix& rho) {
    if (chan.components().front().in_dim() != rho.dim())
        throw DimensionError("apply: mixture dimension does not match state dimension " + std::to_string(rho.dim()));
    return DensityMatrix::from_raw(chan.apply(rho.matrix()), rho.dims());
}

inline KrausChannel identity_channel(std::size_t d) { return KrausChannel({identity(d)}); }

/// Full dephasing in the computational basis: {|j><j|}.
inline KrausChannel dephasing_channel(std::size_t d) {
    std::vector<CMatrix> ops;
    for (std::size_t j = 0; j < d; ++j) ops.push_back(projector(ket(d, j)));
    return KrausChannel(std::move(ops));
}

inline KrausChannel make_iuo(const IncoherentUnitary& u) { return KrausChannel({u.matrix()}); }

inline KrausChannel make_iuo(std::vector<std::size_t> perm, std::vector<double> phases) {
    return make_iuo(IncoherentUnitary(std::move(perm), std::move(phases)));
}

/// Kraus set {U_j |j><j|}, one incoherent unitary per reference level.
inline KrausChannel make_rank_one_ppio(std::size_t dim, std::span<const IncoherentUnitary> unitaries) {
    if (unitaries.size() != dim)
        throw ValidationError("rank-one PPIO needs one incoherent unitary per level: got " +
                              std::to_string(unitaries.size()) + " for dimension " + std::to_string(dim));
    std::vector<CMatrix> ops;
    ops.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        if (unitaries[j].dim() != dim) throw DimensionError("rank-one PPIO: unitary dimension mismatch");
        ops.push_back(unitaries[j].matrix() * projector(ket(dim, j)));
    }
    return KrausChannel(std::move(ops));
}

/// Random per-level unitaries. With `bijective`, the induced level map
/// j -> perm_j(j) is a permutation, so no two branches land on the same level.
inline std::vector<IncoherentUnitary> random_rank_one_unitaries(std::size_t dim, CounterRng& rng,
                                                                bool bijective = false) {
    std::vector<IncoherentUnitary> us;
    us.reserve(dim);
    const auto targets = rng.permutation(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        auto u = IncoherentUnitary::random(dim, rng);
        if (bijective) {
            auto perm = u.permutation();
            const auto pos = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), targets[j]) - perm.begin());
            std::swap(perm[j], perm[pos]);
            u = IncoherentUnitary(std::move(perm), u.phases());
        }
        us.push_back(std::move(u));
    }
    return us;
}

/// One Kraus set K_j = U_j P_j. Projectors are incoherent, so each is a set
/// of reference-basis indices.
struct PpioSpec {
    std::vector<std::vector<std::size_t>> projectors;
    std::vector<IncoherentUnitary> unitaries;

    /// Builds a spec from matrix projectors and unitaries, checking both are incoherent.
    static PpioSpec from_matrices(std::span<const CMatrix> projectors, std::span<const CMatrix> unitaries,
                                  double tol = 1e-9) {
        PpioSpec spec;
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            const auto& p = projectors[j];
            if (p.rows() != p.cols()) throw DimensionError("projector " + std::to_string(j) + " is not square");
            std::vector<std::size_t> idx;
            for (Eigen::Index r = 0; r < p.rows(); ++r)
                for (Eigen::Index c = 0; c < p.cols(); ++c) {
                    const Complex z = p(r, c);
                    if (r != c && std::abs(z) > tol)
                        throw ValidationError("projector " + std::to_string(j) + " is not incoherent: entry (" +
                                              std::to_string(r) + "," + std::to_string(c) + ") is off-diagonal");
                    if (r == c) {
                        if (std::abs(z - 1.0) <= tol)
                            idx.push_back(static_cast<std::size_t>(r));
                        else if (std::abs(z) > tol)
                            throw ValidationError("projector " + std::to_string(j) + " has diagonal entry " +
                                                  std::to_string(r) + " not in {0, 1}");
                    }
                }
            spec.projectors.push_back(std::move(idx));
        }
        for (std::size_t j = 0; j < unitaries.size(); ++j) {
            const auto& u = unitaries[j];
            if (u.rows() != u.cols()) throw DimensionError("unitary " + std::to_string(j) + " is not square");
            std::vector<std::size_t> perm(static_cast<std::size_t>(u.cols()));
            std::vector<double> phases(perm.size());
            for (Eigen::Index c = 0; c < u.cols(); ++c) {
                Eigen::Index hits = 0;
                for (Eigen::Index r = 0; r < u.rows(); ++r) {
                    if (std::abs(u(r, c)) <= tol) continue;
                    if (std::abs(std::abs(u(r, c)) - 1.0) > tol || ++hits > 1)
                        throw ValidationError("unitary " + std::to_string(j) +
                                              " is not incoherent (not a phase-decorated permutation)");
                    perm[static_cast<std::size_t>(c)] = static_cast<std::size_t>(r);
                    phases[static_cast<std::size_t>(c)] = std::arg(u(r, c));
                }
                if (hits == 0)
                    throw ValidationError("unitary " + std::to_string(j) + " has an empty column " + std::to_string(c));
            }
            spec.unitaries.emplace_back(std::move(perm), std::move(phases));
        }
        return spec;
    }
};

inline KrausChannel make_ppio(const PpioSpec& spec) {
    if (spec.projectors.empty() || spec.projectors.size() != spec.unitaries.size())
        throw ValidationError("PPIO: need one unitary per projector");
    const std::size_t d = spec.unitaries.front().dim();
    std::vector<int> owner(d, -1);
    for (std::size_t j = 0; j < spec.projectors.size(); ++j) {
        if (spec.unitaries[j].dim() != d) throw DimensionError("PPIO: unitary dimensions differ");
        if (spec.projectors[j].empty()) throw ValidationError("PPIO: projector " + std::to_string(j) + " is zero");
        for (auto y : spec.projectors[j]) {
            if (y >= d) throw DimensionError("PPIO: projector index out of range");
            if (owner[y] >= 0)
                throw ValidationError("PPIO: projectors " + std::to_string(owner[y]) + " and " + std::to_string(j) +
                                      " are not orthogonal (share level " + std::to_string(y) + ")");
            owner[y] = static_cast<int>(j);
        }
    }
    for (std::size_t y = 0; y < d; ++y)
        if (owner[y] < 0) throw ValidationError("PPIO: projectors are not complete (level " + std::to_string(y) + " missing)");
    std::vector<CMatrix> ops;
    for (std::size_t j = 0; j < spec.projectors.size(); ++j) {
        CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (auto y : spec.projectors[j]) p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y)) = 1.0;
        ops.push_back(spec.unitaries[j].matrix() * p);
    }
    return KrausChannel(std::move(ops));
}

struct PioSpec {
    std::vector<double> weights;
    std::vector<PpioSpec> components;
};

inline ChannelMixture make_pio(const PioSpec& spec) {
    std::vector<KrausChannel> comps;
    comps.reserve(spec.components.size());
    for (const auto& c : spec.components) comps.push_back(make_ppio(c));
    return ChannelMixture(spec.weights, std::move(comps));
}

/// Kraus set {U_a (x) B_j}.
inline KrausChannel make_theorem3_free(const IncoherentUnitary& u_a, std::span<const CMatrix> b_ops) {
    if (b_ops.empty()) throw ValidationError("B-side Kraus set is empty");
    const auto db = b_ops.front().cols();
    CMatrix sum = CMatrix::Zero(db, db);
    for (const auto& b : b_ops) {
        if (b.cols() != db || b.rows() != db) throw DimensionError("B-side Kraus operators must be square and equal size");
        sum += b.adjoint() * b;
    }
    const double dev = max_abs(sum - CMatrix::Identity(db, db));
    if (dev > tolerances().channel)
        throw ValidationError("B-side Kraus operators are not complete: |sum B^dag B - I| = " + std::to_string(dev));
    const CMatrix ua = u_a.matrix();
    std::vector<CMatrix> ops;
    ops.reserve(b_ops.size());
    for (const auto& b : b_ops) ops.push_back(tensor(ua, b));
    return KrausChannel(std::move(ops));
}

/// Random CPTP Kraus set on B with `rank` operators (Stinespring isometry).
inline std::vector<CMatrix> random_kraus_set(std::size_t d, std::size_t rank, CounterRng& rng) {
    const CMatrix u = rng.haar_unitary(d * rank);
    const auto n = static_cast<Eigen::Index>(d);
    std::vector<CMatrix> ops;
    for (std::size_t j = 0; j < rank; ++j) ops.push_back(u.block(static_cast<Eigen::Index>(j) * n, 0, n, n));
    return ops;
}

/// Qubit depolarizing Kraus set: rho -> (1-p) rho + p I/2.
inline std::vector<CMatrix> depolarizing_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing: p must lie in [0, 1]");
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return {std::sqrt(1.0 - 0.75 * p) * identity(2), std::sqrt(p / 4) * x, std::sqrt(p / 4) * y,
            std::sqrt(p / 4) * z};
}

enum class ChannelLabel { Incoherent, IUO, PPIO, RankOnePPIO, PIO, Theorem3Free };

inline std::string to_string(ChannelLabel l) {
    switch (l) {
        case ChannelLabel::Incoherent: return "incoherent";
        case ChannelLabel::IUO: return "IUO";
        case ChannelLabel::PPIO: return "PPIO";
        case ChannelLabel::RankOnePPIO: return "rank-one-PPIO";
        case ChannelLabel::PIO: return "PIO";
        case ChannelLabel::Theorem3Free: return "theorem3-free-factorizable";
    }
    return "?";
}

using LabelSet = std::set<ChannelLabel>;

namespace detail {

// Column structure of one Kraus operator in the reference frame.
struct ColumnPattern {
    bool incoherent = true;        // every column has at most one nonzero entry
    bool partial_isometry = true;  // every nonzero column is a unit-modulus single entry
    std::vector<Eigen::Index> target;  // row of the nonzero entry, -1 for zero columns
};

inline ColumnPattern column_pattern(const CMatrix& k, double tol) {
    ColumnPattern pat;
    pat.target.assign(static_cast<std::size_t>(k.cols()), -1);
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
        int hits = 0;
        for (Eigen::Index r = 0; r < k.rows(); ++r) {
            if (std::abs(k(r, c)) <= tol) continue;
            ++hits;
            pat.target[static_cast<std::size_t>(c)] = r;
            if (std::abs(std::abs(k(r, c)) - 1.0) > tol) pat.partial_isometry = false;
        }
        if (hits > 1) {
            pat.incoherent = false;
            pat.partial_isometry = false;
        }
    }
    return pat;
}

// Operator-Schmidt rank-one split K = A (x) B with A scaled to be unitary when
// possible. Returns false when K is not a product.
inline bool split_product(const CMatrix& k, Dims dims, double tol, CMatrix& a_out) {
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    CMatrix realigned(da * da, db * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            for (Eigen::Index r = 0; r < db; ++r)
                for (Eigen::Index s = 0; s < db; ++s) realigned(i * da + j, r * db + s) = k(i * db + r, j * db + s);
    Eigen::JacobiSVD<CMatrix> svd(realigned, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1 && sv(1) > tol * std::max(1.0, sv(0))) return false;
    a_out.resize(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j) a_out(i, j) = svd.matrixU()(i * da + j, 0);
    const double fro = a_out.norm();
    if (fro <= 0.0) return false;
    a_out *= std::sqrt(static_cast<double>(dims.a)) / fro;
    return true;
}

}  // namespace detail

/// Structural labels of the given Kraus representation relative to `basis`.
/// Labels are never asserted falsely; equivalence under Kraus gauge freedom is
/// not searched for.
inline LabelSet classify(const KrausChannel& chan, const ReferenceBasis& basis, double tol = 1e-9) {
    LabelSet labels;
    if (chan.in_dim() != basis.dim() || chan.out_dim() != basis.dim()) return labels;
    const std::size_t d = basis.dim();
    const CMatrix& f = basis.frame();

    bool incoherent = true;
    bool ppio = true;
    bool rank_one = chan.ops().size() == d;
    std::vector<int> owner(d, 0);
    for (const auto& k : chan.ops()) {
        const CMatrix kf = basis.is_computational() ? k : CMatrix(f.adjoint() * k * f);
        const auto pat = detail::column_pattern(kf, tol);
        incoherent = incoherent && pat.incoherent;
        ppio = ppio && pat.partial_isometry;
        std::vector<bool> row_used(d, false);
        std::size_t support = 0;
        for (std::size_t c = 0; c < d; ++c) {
            const auto r = pat.target[c];
            if (r < 0) continue;
            ++support;
            ++owner[c];
            if (row_used[static_cast<std::size_t>(r)]) ppio = false;
            row_used[static_cast<std::size_t>(r)] = true;
        }
        if (support != 1) rank_one = false;
    }
    for (int o : owner)
        if (o != 1) ppio = false;

    if (incoherent) labels.insert(ChannelLabel::Incoherent);
    if (incoherent && ppio) {
        labels.insert(ChannelLabel::PPIO);
        if (chan.ops().size() == 1) labels.insert(ChannelLabel::IUO);
        if (rank_one) labels.insert(ChannelLabel::RankOnePPIO);
    }
    return labels;
}

/// Labels of a bipartite channel: single-system labels against the joint
/// reference basis, plus the factorizable U_a (x) B_j form with U_a an IUO in `basis_a`.
inline LabelSet classify(const KrausChannel& chan, Dims dims, const ReferenceBasis& basis_a,
                         const ReferenceBasis& basis_b, double tol = 1e-9) {
    LabelSet labels = classify(chan, tensor(basis_a, basis_b), tol);
    if (chan.in_dim() != dims.total() || chan.out_dim() != dims.total() || basis_a.dim() != dims.a) return labels;
    CMatrix reference;
    bool factorizable = true;
    for (const auto& k : chan.ops()) {
        if (max_abs(k) <= tol) continue;
        CMatrix a;
        if (!detail::split_product(k, dims, tol, a)) {
            factorizable = false;
            break;
        }
        const CMatrix af = basis_a.is_computational() ? a : CMatrix(basis_a.frame().adjoint() * a * basis_a.frame());
        const auto pat = detail::column_pattern(af, tol);
        bool iuo = pat.partial_isometry;
        for (auto r : pat.target) iuo = iuo && r >= 0;
        if (!iuo || !is_unitary(af, 10 * tol)) {
            factorizable = false;
            break;
        }
        if (reference.size() == 0) {
            reference = af;
        } else {
            const Complex overlap = (reference.adjoint() * af).trace() / static_cast<double>(dims.a);
            if (std::abs(std::abs(overlap) - 1.0) > 10 * tol) {
                factorizable = false;
                break;
            }
        }
    }
    if (factorizable && reference.size() != 0) labels.insert(ChannelLabel::Theorem3Free);
    return labels;
}

/// A mixture of two or more PPIOs is a PIO; a single component keeps its own labels.
inline LabelSet classify(const ChannelMixture& mix, const ReferenceBasis& basis, double tol = 1e-9) {
    if (mix.size() == 1) return classify(mix.components().front(), basis, tol);
    bool all_ppio = true;
    bool all_incoherent = true;
    for (const auto& c : mix.components()) {
        const auto l = classify(c, basis, tol);
        all_ppio = all_ppio && l.contains(ChannelLabel::PPIO);
        all_incoherent = all_incoherent && l.contains(ChannelLabel::Incoherent);
    }
    LabelSet labels;
    if (all_incoherent) labels.insert(ChannelLabel::Incoherent);
    if (all_ppio) labels.insert(ChannelLabel::PIO);
    return labels;
}

}  // namespace dlc
