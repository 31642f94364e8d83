// Smith form, local partial multiplicities and the Jordan linearization.

#include <gtest/gtest.h>

#include "algmult/planted.hpp"
#include "algmult/smith.hpp"
#include "oracles.hpp"

using namespace algmult;
using Q = Rational;
using Qi = GaussianRational;
using oracle::lam;

namespace {

MatPoly<Q> off_diagonal() {
    MatPoly<Q> m(2, 2);
    m(0, 0) = Poly<Q>(1);
    m(0, 1) = lam();
    m(1, 0) = lam();
    return m;
}

using Kappa = std::vector<std::int64_t>;

}  // namespace

TEST(Smith, Examples) {
    const auto d = smith_form(MatPoly<Q>::diagonal({lam(), lam().pow(2)}));
    EXPECT_EQ(d.invariant_factors, (std::vector<Poly<Q>>{lam(), lam().pow(2)}));
    const auto i = smith_form(MatPoly<Q>::identity(3));
    EXPECT_EQ(i.invariant_factors, std::vector<Poly<Q>>(3, Poly<Q>(1)));
    const auto o = smith_form(off_diagonal());
    EXPECT_EQ(o.invariant_factors, (std::vector<Poly<Q>>{Poly<Q>(1), lam().pow(2)}));
}

TEST(Smith, OutOfOrderDiagonalIsSorted) {
    // diag(λ², λ(λ−1)) has invariant factors λ, λ²(λ−1)
    const auto s = smith_form(MatPoly<Q>::diagonal({lam().pow(2), lam() * (lam() - Poly<Q>(1))}));
    EXPECT_EQ(s.invariant_factors[0], lam());
    EXPECT_EQ(s.invariant_factors[1], lam().pow(2) * (lam() - Poly<Q>(1)));
}

template <class F>
class SmithProperties : public ::testing::Test {};
using Fields = ::testing::Types<Q, Qi>;
TYPED_TEST_SUITE(SmithProperties, Fields);

TYPED_TEST(SmithProperties, TransformsAndDivisibility) {
    using F = TypeParam;
    Rng rng(51);
    for (int t = 0; t < 30; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
        const MatPoly<F> a = random_matpoly<F>(rng, n, static_cast<int>(rng.uniform(1, 2)), 2);
        if (det(a).is_zero()) continue;
        const auto s = smith_form(a);
        EXPECT_EQ(s.E * a * s.F_, MatPoly<F>::diagonal(s.invariant_factors));
        EXPECT_TRUE(det(s.E).is_constant());
        EXPECT_TRUE(det(s.F_).is_constant());
        for (std::size_t i = 0; i + 1 < n; ++i)
            EXPECT_TRUE(divmod(s.invariant_factors[i + 1], s.invariant_factors[i]).second.is_zero());
        // the product of invariant factors is det up to a unit
        Poly<F> prod(F(1));
        for (const auto& d : s.invariant_factors) prod *= d;
        EXPECT_EQ(prod.monic(), det(a).monic());
    }
}

TYPED_TEST(SmithProperties, PlantedPartialMultiplicities) {
    using F = TypeParam;
    Rng rng(52);
    for (int t = 0; t < 40; ++t) {
        const auto inst = random_planted<F>(rng, PlantedLimits{});
        const auto lsf = local_partial_multiplicities(inst.build(), inst.center);
        EXPECT_EQ(lsf.kappa, inst.expected_kappa());
        const auto pp = projection_pair(inst.path(), inst.center);
        const auto ls = local_smith_of_schur(inst.path(), pp);
        EXPECT_EQ(ls.kappa, inst.expected_kappa());
        EXPECT_EQ(ls.kappa.size(), pp.kernel_dim());
    }
}

TEST(LocalSmith, Examples) {
    EXPECT_EQ(local_partial_multiplicities(MatPoly<Q>::diagonal({lam(), lam().pow(2)}), Q(0)).kappa, (Kappa{2, 1}));
    EXPECT_EQ(local_partial_multiplicities(off_diagonal(), Q(0)).kappa, (Kappa{2}));
    EXPECT_EQ(local_partial_multiplicities(MatPoly<Q>::diagonal({-(lam() * lam())}), Q(0)).kappa, (Kappa{2}));
    const Path<Q> d3(MatPoly<Q>::diagonal({lam().pow(2), lam(), Poly<Q>(1)}));
    const auto ls = local_smith_of_schur(d3, projection_pair(d3, Q(0)));
    EXPECT_EQ(ls.kappa, (Kappa{2, 1}));
    EXPECT_EQ(ls.total(), 3);
    EXPECT_EQ(chi_via_smith(Path<Q>(off_diagonal()), projection_pair(Path<Q>(off_diagonal()), Q(0))), ExtendedNat(2));
    EXPECT_EQ(chi_via_smith(Path<Q>(off_diagonal()), projection_pair(Path<Q>(off_diagonal()), Q(3))), ExtendedNat(0));
}

TEST(LocalSmith, RationalInputWithUnitDenominator) {
    RatMat<Q> a(1, 1);
    a(0, 0) = RationalFunction<Q>(lam().pow(2), lam() - Poly<Q>(1));
    EXPECT_EQ(local_partial_multiplicities(a, Q(0)).kappa, (Kappa{2}));
    EXPECT_THROW(local_partial_multiplicities(a, Q(1)), InvalidInput);
}

TEST(Linearization, JordanStructure) {
    const auto lin = build_linearization<Q>({2, 1}, Q(0));
    EXPECT_EQ(lin.M, 3u);
    EXPECT_EQ(lin.L, direct_sum(oracle::jordan(2, Q(0)), oracle::jordan(1, Q(0))));
    EXPECT_EQ(det(pencil(lin.L)), lam().pow(3));

    const auto seven = build_linearization<Q>({1}, Q(7));
    EXPECT_EQ(seven.L, ConstMat<Q>{{Q(7)}});

    // dim N[L³] = 3 for κ = (3)
    const auto three = build_linearization<Q>({3}, Q(0));
    const ConstMat<Q> l3 = three.L * three.L * three.L;
    EXPECT_EQ(kernel_basis(l3).cols(), 3u);
    EXPECT_EQ(kernel_basis(three.L).cols(), 1u);
}

TYPED_TEST(SmithProperties, LinearizationWitnessesOnRandomKappa) {
    using F = TypeParam;
    Rng rng(53);
    for (int t = 0; t < 30; ++t) {
        Kappa k(static_cast<std::size_t>(rng.uniform(1, 3)));
        for (auto& v : k) v = rng.uniform(1, 3);
        std::sort(k.rbegin(), k.rend());
        const F c = random_scalar<F>(rng, 2);
        const auto lin = build_linearization<F>(k, c);
        EXPECT_EQ(lin.P1 * pencil(lin.L) * lin.P2, lin.target);
        EXPECT_TRUE(det(lin.P1).is_constant() && !det(lin.P1).is_zero());
        EXPECT_TRUE(det(lin.P2).is_constant() && !det(lin.P2).is_zero());
        std::int64_t sum = 0;
        for (auto v : k) sum += v;
        EXPECT_EQ(ord_at(det(pencil(lin.L)), c), ExtendedNat(sum));
    }
}

TEST(Linearization, RejectsEmptyOrNonPositive) {
    EXPECT_THROW(build_linearization<Q>({}, Q(0)), InvalidInput);
    EXPECT_THROW(build_linearization<Q>({0}, Q(0)), InvalidInput);
}
