#include <gtest/gtest.h>

#include "dlc/dlc.hpp"

using namespace dlc;

namespace {

CMatrix diag2(double x, double y) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

CMatrix pauli_x() {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

}  // namespace

TEST(Tensor, IdentityTimesIdentity) { EXPECT_LT(max_abs(tensor(identity(2), identity(2)) - identity(4)), 1e-15); }

TEST(Tensor, BasisProjectors) {
    const CMatrix t = tensor(diag2(1, 0), diag2(0, 1));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(1, 1) = 1.0;
    EXPECT_LT(max_abs(t - expect), 1e-15);
}

TEST(Tensor, PlusTimesZeroHandExpanded) {
    const CMatrix t = tensor(projector(ket_plus()), projector(ket(2, 0)));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = expect(0, 2) = expect(2, 0) = expect(2, 2) = 0.5;
    EXPECT_LT(max_abs(t - expect), 1e-15);
}

TEST(PartialTrace, ProductFactorizes) {
    CounterRng rng(11);
    const CMatrix r = random_density(2, Ensemble::GinibreMixed, rng);
    CMatrix s = random_density(3, Ensemble::GinibreMixed, rng) * 0.7;  // Tr = 0.7
    const CMatrix kept = partial_trace(tensor(r, s), {2, 3}, Subsystem::A);
    EXPECT_LT(max_abs(kept - r * s.trace()), 1e-14);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const CMatrix b = partial_trace(bell_phi_plus().matrix(), {2, 2}, Subsystem::B);
    EXPECT_LT(max_abs(b - identity(2) / 2.0), 1e-15);
}

TEST(PartialTrace, CqStateBlockSum) {
    const std::vector<double> p{0.5, 0.5};
    const std::vector<CMatrix> blocks{projector(ket(2, 0)), projector(ket_plus())};
    const auto cq = classical_quantum(p, ReferenceBasis::computational(2), blocks);
    EXPECT_LT(max_abs(partial_trace(cq.matrix(), {2, 2}, Subsystem::A) - identity(2) / 2.0), 1e-15);
}

TEST(PartialTrace, DimensionMismatchThrows) {
    EXPECT_THROW(partial_trace(identity(5), {2, 2}, Subsystem::A), DimensionError);
}

TEST(HermitianEig, DiagonalInput) {
    const auto e = hermitian_eig(diag2(0.3, 0.7));
    EXPECT_NEAR(e.values(0), 0.7, 1e-15);
    EXPECT_NEAR(e.values(1), 0.3, 1e-15);
}

TEST(HermitianEig, RankOneProjector) {
    const auto v = hermitian_eigenvalues(projector(ket_plus()));
    EXPECT_NEAR(v(0), 1.0, 1e-14);
    EXPECT_NEAR(v(1), 0.0, 1e-14);
}

TEST(HermitianEig, PauliX) {
    const auto v = hermitian_eigenvalues(pauli_x());
    EXPECT_NEAR(v(0), 1.0, 1e-14);
    EXPECT_NEAR(v(1), -1.0, 1e-14);
}

TEST(HermitianEig, ReconstructsAndIsOrthonormal) {
    CounterRng rng(5);
    for (std::size_t d : {2u, 3u, 6u}) {
        const CMatrix g = rng.ginibre(d, d);
        const CMatrix m = g + g.adjoint();
        const auto e = hermitian_eig(m);
        const CMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LT(max_abs(rec - m), 1e-9);
        EXPECT_LT(max_abs(e.vectors.adjoint() * e.vectors - identity(d)), 1e-12);
        for (Eigen::Index k = 1; k < e.values.size(); ++k) EXPECT_GE(e.values(k - 1), e.values(k));
    }
}

TEST(HermitianEig, NonHermitianThrows) {
    CMatrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(hermitian_eig(m), ValidationError);
}

TEST(Dephase, PlusInComputationalBasis) {
    EXPECT_LT(max_abs(dephase(projector(ket_plus()), ReferenceBasis::computational(2)) - identity(2) / 2.0), 1e-15);
}

TEST(Dephase, DiagonalUnchanged) {
    const CMatrix m = diag2(0.2, 0.8);
    EXPECT_LT(max_abs(dephase(m, ReferenceBasis::computational(2)) - m), 1e-15);
}

TEST(Dephase, EigenbasisFrameLeavesPlusAlone) {
    CMatrix frame(2, 2);
    frame.col(0) = ket_plus();
    frame.col(1) = ket_minus();
    const auto pm = ReferenceBasis::from_frame(frame);
    EXPECT_LT(max_abs(dephase(projector(ket_plus()), pm) - projector(ket_plus())), 1e-14);
}

TEST(Dephase, DimensionMismatchThrows) {
    EXPECT_THROW(dephase(identity(3), ReferenceBasis::computational(2)), DimensionError);
}

TEST(Dephase, Idempotent) {
    CounterRng rng(8);
    const CMatrix r = random_density(4, Ensemble::GinibreMixed, rng);
    const auto b = ReferenceBasis::from_frame(rng.haar_unitary(4));
    const CMatrix once = dephase(r, b);
    EXPECT_LT(max_abs(dephase(once, b) - once), 1e-13);
}

TEST(DephaseLocal, BellState) {
    const CMatrix out = dephase_local(bell_phi_plus().matrix(), {2, 2}, ReferenceBasis::computational(2));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    EXPECT_LT(max_abs(out - expect), 1e-15);
}

TEST(DephaseLocal, ProductFactorizes) {
    CounterRng rng(21);
    const CMatrix a = random_density(2, Ensemble::GinibreMixed, rng);
    const CMatrix b = random_density(3, Ensemble::GinibreMixed, rng);
    const auto ref = ReferenceBasis::computational(2);
    EXPECT_LT(max_abs(dephase_local(tensor(a, b), {2, 3}, ref) - tensor(dephase(a, ref), b)), 1e-15);
}

TEST(DephaseLocal, CqStateFixedPoint) {
    CounterRng rng(4);
    const auto cq = random_cq_state({3, 2}, ReferenceBasis::computational(3), rng);
    EXPECT_LT(max_abs(dephase_local(cq.matrix(), {3, 2}, ReferenceBasis::computational(3)) - cq.matrix()), 1e-15);
}

TEST(DephaseLocal, RotatedFrameMatchesConjugation) {
    CounterRng rng(13);
    const CMatrix r = random_density(6, Ensemble::GinibreMixed, rng);
    const CMatrix u = rng.haar_unitary(3);
    const auto b = ReferenceBasis::from_frame(u);
    // Delta_U (x) 1 = (U (x) 1) Delta (U^dag (x) 1)
    const Dims d{3, 2};
    const CMatrix expect =
        conjugate_local_a(dephase_local(conjugate_local_a(r, d, u.adjoint()), d, ReferenceBasis::computational(3)), d, u);
    EXPECT_LT(max_abs(dephase_local(r, d, b) - expect), 1e-13);
}

TEST(ReferenceBasis, RejectsNonUnitaryFrame) {
    EXPECT_THROW(ReferenceBasis::from_frame(diag2(1, 0.5)), ValidationError);
}

TEST(ReferenceBasis, TensorOfComputationalIsComputational) {
    const auto t = tensor(ReferenceBasis::computational(2), ReferenceBasis::computational(3));
    EXPECT_TRUE(t.is_computational());
    EXPECT_EQ(t.dim(), 6u);
}

TEST(SwapSubsystems, InvolutionAndMarginals) {
    CounterRng rng(3);
    const CMatrix r = random_density(6, Ensemble::GinibreMixed, rng);
    const Dims d{2, 3};
    const CMatrix s = swap_subsystems(r, d);
    EXPECT_LT(max_abs(swap_subsystems(s, d.swapped()) - r), 1e-15);
    EXPECT_LT(max_abs(partial_trace(s, d.swapped(), Subsystem::B) - partial_trace(r, d, Subsystem::A)), 1e-15);
}

TEST(Random, SameSeedSameStream) {
    CounterRng a(99), b(99);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Random, HaarUnitaryIsUnitary) {
    CounterRng rng(17);
    for (std::size_t d : {2u, 3u, 5u}) EXPECT_TRUE(is_unitary(rng.haar_unitary(d), 1e-12));
}

TEST(Random, PermutationIsPermutation) {
    CounterRng rng(2);
    auto p = rng.permutation(7);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(p[i], i);
}
