#include <gtest/gtest.h>

#include "dlc/dlc.hpp"
#include "oracles.hpp"

using namespace dlc;

namespace {

const ReferenceBasis& ref2() {
    static const auto b = ReferenceBasis::computational(2);
    return b;
}

DensityMatrix cq_zero_plus() {
    const std::vector<double> p{0.5, 0.5};
    const std::vector<CMatrix> blocks{projector(ket(2, 0)), projector(ket_plus())};
    return classical_quantum(p, ref2(), blocks);
}

DensityMatrix random_mixed(std::size_t da, std::size_t db, std::uint64_t seed) {
    return random_state(da, db, Ensemble::GinibreMixed, seed);
}

}  // namespace

TEST(Entropy, PureStateIsZero) { EXPECT_NEAR(entropy(bell_phi_plus()), 0.0, 1e-12); }

TEST(Entropy, MaximallyMixedIsLogD) {
    for (std::size_t d : {2u, 3u, 4u, 6u}) EXPECT_NEAR(entropy(CMatrix(identity(d) / double(d))), std::log2(d), 1e-12);
}

TEST(Entropy, ThreeQuartersOneQuarter) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.75;
    m(1, 1) = 0.25;
    EXPECT_NEAR(entropy(m), 0.811278, 1e-6);
    EXPECT_NEAR(entropy(m), oracle::shannon({0.75, 0.25}), 1e-14);
}

TEST(Entropy, MatchesEigenOracleOnRandomStates) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = random_mixed(2, 3, s);
        EXPECT_NEAR(entropy(r), oracle::entropy(r.matrix()), 1e-12);
    }
}

TEST(Entropy, InvalidSpectrumThrows) {
    RVector v(2);
    v << 1.1, -0.1;
    EXPECT_THROW(entropy_of_spectrum(v), ValidationError);
    v << 1.0 + 1e-11, -1e-11;
    EXPECT_NO_THROW(entropy_of_spectrum(v));
}

TEST(RelativeEntropy, SelfIsZero) {
    const auto r = random_mixed(2, 2, 3);
    EXPECT_NEAR(relative_entropy(r, r), 0.0, 1e-12);
}

TEST(RelativeEntropy, DisjointSupportIsInfinite) {
    EXPECT_TRUE(std::isinf(relative_entropy(projector(ket(2, 0)), projector(ket(2, 1)))));
}

TEST(RelativeEntropy, PlusAgainstMaximallyMixed) {
    EXPECT_NEAR(relative_entropy(projector(ket_plus()), identity(2) / 2.0), 1.0, 1e-12);
}

TEST(RelativeEntropy, DimensionMismatch) {
    EXPECT_THROW(relative_entropy(identity(2) / 2.0, identity(3) / 3.0), DimensionError);
}

TEST(CoherenceRelEnt, DiagonalIsZero) {
    CounterRng rng(1);
    const CMatrix d = random_density(4, Ensemble::GinibreMixed, rng).diagonal().asDiagonal();
    EXPECT_NEAR(coherence_rel_ent(d, ReferenceBasis::computational(4)), 0.0, 1e-14);
}

TEST(CoherenceRelEnt, PlusIsOneBit) { EXPECT_NEAR(coherence_rel_ent(projector(ket_plus()), ref2()), 1.0, 1e-12); }

TEST(CoherenceRelEnt, BellInProductBasis) {
    EXPECT_NEAR(coherence_rel_ent(bell_phi_plus(), ReferenceBasis::computational(4)), 1.0, 1e-12);
}

TEST(CoherenceRelEnt, EqualsDistanceToDephased) {
    // C_r(rho) = S(rho || Delta rho)
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = random_mixed(3, 1, s);
        const auto b = ReferenceBasis::computational(3);
        EXPECT_NEAR(coherence_rel_ent(r, b), relative_entropy(r.matrix(), dephase(r.matrix(), b)), 1e-10);
    }
}

TEST(CoherenceRelEnt, DimensionMismatch) {
    EXPECT_THROW(coherence_rel_ent(identity(3) / 3.0, ref2()), DimensionError);
}

TEST(MutualInformation, ProductIsZero) {
    CounterRng rng(9);
    const auto r = product(random_density(2, Ensemble::GinibreMixed, rng), random_density(3, Ensemble::GinibreMixed, rng));
    EXPECT_NEAR(mutual_information(r), 0.0, 1e-12);
}

TEST(MutualInformation, BellIsTwoBits) { EXPECT_NEAR(mutual_information(bell_phi_plus()), 2.0, 1e-12); }

TEST(MutualInformation, WernerHalfMatchesEntropyOracle) {
    // S_a = S_b = 1, S_ab = H(5/8, 1/8, 1/8, 1/8)
    const double expect = 2.0 - oracle::shannon({5.0 / 8, 1.0 / 8, 1.0 / 8, 1.0 / 8});
    EXPECT_NEAR(mutual_information(werner(0.5)), expect, 1e-12);
}

TEST(CorrelatedCoherence, ProductIsZero) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        CounterRng rng(s);
        const auto r = product(random_density(2, Ensemble::GinibreMixed, rng), random_density(3, Ensemble::GinibreMixed, rng));
        EXPECT_NEAR(correlated_coherence(r), 0.0, 1e-10);
    }
}

TEST(CorrelatedCoherence, BellIsOneBit) { EXPECT_NEAR(correlated_coherence(bell_phi_plus()), 1.0, 1e-12); }

TEST(CorrelatedCoherence, DiagonalIsZero) {
    CounterRng rng(6);
    const CMatrix d = random_density(6, Ensemble::GinibreMixed, rng).diagonal().asDiagonal();
    EXPECT_NEAR(correlated_coherence(DensityMatrix::from_raw(d, {2, 3})), 0.0, 1e-14);
}

TEST(CorrelatedCoherence, ComposesCoherenceCalls) {
    const auto r = random_mixed(2, 2, 77);
    const auto [a, b] = marginals(r);
    const double expect = coherence_rel_ent(r, ReferenceBasis::computational(4)) - coherence_rel_ent(a, ref2()) -
                          coherence_rel_ent(b, ref2());
    EXPECT_NEAR(correlated_coherence(r), expect, 1e-14);
}

TEST(CorrelatedCoherence, SuperadditivityOnRandomStates) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const std::size_t da = 2 + s % 2, db = 2 + (s / 2) % 2;
        EXPECT_GE(correlated_coherence(random_mixed(da, db, s)), -1e-9);
    }
}

TEST(CorrelatedCoherence, InvariantUnderLocalIncoherentUnitaries) {
    CounterRng rng(12);
    const auto r = random_mixed(3, 2, 12);
    const CMatrix u = tensor(IncoherentUnitary::random(3, rng).matrix(), IncoherentUnitary::random(2, rng).matrix());
    const auto rotated = DensityMatrix::from_raw(u * r.matrix() * u.adjoint(), r.dims());
    EXPECT_NEAR(correlated_coherence(rotated), correlated_coherence(r), 1e-12);
}

TEST(CorrelatedCoherence, BasisDimensionMismatch) {
    EXPECT_THROW(correlated_coherence(bell_phi_plus(), ReferenceBasis::computational(3), ref2()), DimensionError);
}

TEST(CrUpper, CqStateIsZero) { EXPECT_NEAR(c_r_upper(cq_zero_plus(), ref2()), 0.0, 1e-14); }

TEST(CrUpper, BellIsOneBit) { EXPECT_NEAR(c_r_upper(bell_phi_plus(), ref2()), 1.0, 1e-12); }

TEST(CrUpper, ProductEqualsMarginalCoherence) {
    CounterRng rng(14);
    const CMatrix a = random_density(2, Ensemble::GinibreMixed, rng);
    const CMatrix b = random_density(3, Ensemble::GinibreMixed, rng);
    EXPECT_NEAR(c_r_upper(product(a, b), ref2()), coherence_rel_ent(a, ref2()), 1e-10);
}

TEST(CrUpper, EqualsDistanceToLocallyDephased) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = random_mixed(2, 3, 100 + s);
        EXPECT_NEAR(c_r_upper(r, ref2()), relative_entropy(r.matrix(), dephase_local(r.matrix(), r.dims(), ref2())),
                    1e-10);
    }
}

TEST(CrUpper, BoundedByJointCoherence) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = random_mixed(2, 2, 200 + s);
        EXPECT_LE(c_r_upper(r, ref2()), coherence_rel_ent(r, ReferenceBasis::computational(4)) + 1e-10);
    }
}

TEST(CrSymmetric, DiagonalIsZero) {
    const CMatrix d = (identity(4) * 0.25);
    EXPECT_NEAR(c_r_symmetric(DensityMatrix::from_raw(d, {2, 2}), ReferenceBasis::computational(4)), 0.0, 1e-14);
}

TEST(CrSymmetric, BellIsOneBit) {
    EXPECT_NEAR(c_r_symmetric(bell_phi_plus(), ReferenceBasis::computational(4)), 1.0, 1e-12);
}

TEST(CrSymmetric, EqualsJointCoherence) {
    const auto r = random_mixed(2, 3, 5);
    const auto joint = ReferenceBasis::computational(6);
    EXPECT_EQ(c_r_symmetric(r, joint), coherence_rel_ent(r, joint));
}

TEST(L1, DiagonalIsZero) {
    EXPECT_NEAR(l1_correlated_coherence(DensityMatrix::from_raw(identity(4) / 4.0, {2, 2})), 0.0, 1e-15);
}

TEST(L1, BellIsOne) { EXPECT_NEAR(l1_correlated_coherence(bell_phi_plus()), 1.0, 1e-14); }

TEST(L1, ProductOfDiagonalsIsZero) {
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(3, 3);
    a.diagonal() << 0.3, 0.7;
    b.diagonal() << 0.2, 0.3, 0.5;
    EXPECT_NEAR(l1_correlated_coherence(product(a, b)), 0.0, 1e-15);
}

TEST(MeasureReport, BellValues) {
    const auto r = measure_report(bell_phi_plus(), true);
    EXPECT_NEAR(r.S_ab, 0.0, 1e-12);
    EXPECT_NEAR(r.S_a, 1.0, 1e-12);
    EXPECT_NEAR(r.S_b, 1.0, 1e-12);
    EXPECT_NEAR(r.I, 2.0, 1e-12);
    EXPECT_NEAR(r.C_r_ab, 1.0, 1e-12);
    EXPECT_NEAR(r.C_r_a, 0.0, 1e-12);
    EXPECT_NEAR(r.I_co, 1.0, 1e-12);
    EXPECT_NEAR(r.C_r_upper, 1.0, 1e-12);
    EXPECT_NEAR(r.C_r_sym, 1.0, 1e-12);
    ASSERT_TRUE(r.l1_cc.has_value());
    EXPECT_NEAR(*r.l1_cc, 1.0, 1e-14);
}

TEST(MeasureReport, AgreesWithIndividualCalls) {
    const auto rho = random_mixed(3, 2, 50);
    const auto r = measure_report(rho);
    EXPECT_NEAR(r.I, mutual_information(rho), 1e-13);
    EXPECT_NEAR(r.I_co, correlated_coherence(rho), 1e-13);
    EXPECT_NEAR(r.C_r_upper, c_r_upper(rho, ReferenceBasis::computational(3)), 1e-13);
    EXPECT_FALSE(r.l1_cc.has_value());
}
