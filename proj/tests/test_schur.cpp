// Schur operator, local determinant, factorization witness and the inverse identity.

#include <gtest/gtest.h>

#include "algmult/planted.hpp"
#include "algmult/schur.hpp"
#include "oracles.hpp"

using namespace algmult;
using Q = Rational;
using Qi = GaussianRational;
using oracle::lam;

namespace {

Path<Q> off_diagonal() {
    MatPoly<Q> m(2, 2);
    m(0, 0) = Poly<Q>(1);
    m(0, 1) = lam();
    m(1, 0) = lam();
    return Path<Q>(m);
}

RationalFunction<Q> rf(const Poly<Q>& p) { return RationalFunction<Q>(p); }

}  // namespace

TEST(Schur, OffDiagonalExample) {
    const Path<Q> p = off_diagonal();
    const auto so = schur_operator(p, projection_pair(p, Q(0)));
    ASSERT_EQ(so.size(), 1u);
    EXPECT_EQ(so.S(0, 0), rf(-(lam() * lam())));
    EXPECT_EQ(local_determinant(so), rf(-(lam() * lam())));
    EXPECT_EQ(chi_via_schur(so), ExtendedNat(2));
    EXPECT_TRUE(invertibility_via_localdet(so, Q(1)));
    EXPECT_FALSE(invertibility_via_localdet(so, Q(0)));
}

TEST(Schur, DiagonalKernelIsWholeSpace) {
    const Path<Q> p(MatPoly<Q>::diagonal({lam(), lam()}));
    const auto so = schur_operator(p, projection_pair(p, Q(0)));
    EXPECT_EQ(so.S, to_ratmat(p.matrix()));
    EXPECT_TRUE(schur_inverse_identity(p, so.pair));
    EXPECT_EQ(chi_via_schur(so), ExtendedNat(2));
}

TEST(Schur, InvertibleAtCenterGivesEmptyOperator) {
    const Path<Q> p = off_diagonal();
    const auto so = schur_operator(p, projection_pair(p, Q(1)));
    EXPECT_EQ(so.size(), 0u);
    EXPECT_EQ(chi_via_schur(so), ExtendedNat(0));
    EXPECT_EQ(local_determinant(so).eval(Q(1)), so.det_l11.eval(Q(1)));
    EXPECT_FALSE(so.det_l11.eval(Q(1)).is_zero());
    const auto w = factorization_witness(p, so.pair);
    EXPECT_EQ(w.left, RatMat<Q>::identity(2));
    EXPECT_EQ(w.right, RatMat<Q>::identity(2));
}

TEST(Schur, InvertibilityAtShiftedRoot) {
    const Path<Q> p(MatPoly<Q>::diagonal({lam() - Poly<Q>(3), Poly<Q>(1)}));
    EXPECT_FALSE(invertibility_via_localdet(p, projection_pair(p, Q(3)), Q(3)));
}

TEST(Schur, FactorizationBlocksOfOffDiagonal) {
    const Path<Q> p = off_diagonal();
    const auto w = factorization_witness(p, projection_pair(p, Q(0)));
    RatMat<Q> left = RatMat<Q>::identity(2), right = RatMat<Q>::identity(2), mid = RatMat<Q>::identity(2);
    left(1, 0) = rf(lam());
    right(0, 1) = rf(lam());
    mid(1, 1) = rf(-(lam() * lam()));
    EXPECT_EQ(w.left, left);
    EXPECT_EQ(w.middle, mid);
    EXPECT_EQ(w.right, right);
    EXPECT_EQ(w.ambient_left * w.middle * w.ambient_right, to_ratmat(p.matrix()));
}

template <class F>
class SchurProperties : public ::testing::Test {};
using Fields = ::testing::Types<Q, Qi>;
TYPED_TEST_SUITE(SchurProperties, Fields);

TYPED_TEST(SchurProperties, RoutesAgreeOnPlantedInstances) {
    using F = TypeParam;
    Rng rng(41);
    const int trials = F::is_real_field ? 40 : 12;
    for (int t = 0; t < trials; ++t) {
        const auto inst = random_planted<F>(rng, PlantedLimits{});
        const Path<F> path = inst.path();
        for (std::uint64_t s = 0; s < 3; ++s) {
            const auto pp = projection_pair(path, inst.center, s ? std::optional<std::uint64_t>(s + 100) : std::nullopt);
            const auto so = schur_operator(path, pp);
            EXPECT_EQ(so.size(), pp.kernel_dim());
            if (so.size()) {
                EXPECT_TRUE(eval(so.S, inst.center).is_zero());
                EXPECT_TRUE(schur_inverse_identity(path, pp));
            }
            EXPECT_EQ(chi_via_schur(so), ExtendedNat(inst.expected_chi()));
            EXPECT_EQ(valuation(local_determinant(so), inst.center), inst.expected_chi());
            const auto w = factorization_witness(path, pp);
            EXPECT_EQ(w.ambient_left * w.middle * w.ambient_right, to_ratmat(path.matrix()));
        }
    }
}

TYPED_TEST(SchurProperties, InverseKernelBlockIsInverseOfSchur) {
    using F = TypeParam;
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        const auto inst = random_planted<F>(rng, PlantedLimits{});
        const Path<F> path = inst.path();
        const auto pp = projection_pair(path, inst.center);
        if (pp.kernel_dim() == 0) continue;
        const auto so = schur_operator(path, pp);
        EXPECT_EQ(so.S * kernel_block_of_inverse(path, pp), RatMat<F>::identity(so.size()));
    }
}

TEST(Schur, DegeneratePathHasInfiniteChi) {
    MatPoly<Q> z(2, 2);
    z(0, 0) = z(0, 1) = z(1, 0) = z(1, 1) = lam();
    const Path<Q> p(z);
    const auto so = schur_operator(p, projection_pair(p, Q(0)));
    EXPECT_TRUE(local_determinant(so).is_zero());
    EXPECT_THROW(chi_via_schur(so), DegeneratePath);
    EXPECT_THROW(chi_via_schur(p, so.pair), DegeneratePath);
}
