// Constant and polynomial matrices: elimination, determinants, inverses, Taylor data.

#include <gtest/gtest.h>

#include "algmult/linalg.hpp"
#include "algmult/planted.hpp"
#include "algmult/roots.hpp"
#include "oracles.hpp"

using namespace algmult;
using Q = Rational;
using Qi = GaussianRational;

template <class F>
class FieldTest : public ::testing::Test {};
using Fields = ::testing::Types<Q, Qi>;
TYPED_TEST_SUITE(FieldTest, Fields);

TYPED_TEST(FieldTest, DeterminantMatchesCofactorExpansion) {
    using F = TypeParam;
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        ConstMat<F> a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = random_scalar<F>(rng, 4);
        EXPECT_EQ(determinant(a), oracle::cofactor_det(a));
    }
}

TYPED_TEST(FieldTest, PolynomialDeterminantMatchesLeibniz) {
    using F = TypeParam;
    Rng rng(22);
    for (int t = 0; t < 40; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        const MatPoly<F> a = random_matpoly<F>(rng, n, static_cast<int>(rng.uniform(0, 3)));
        EXPECT_EQ(det(a), oracle::leibniz_det(a));
    }
}

TYPED_TEST(FieldTest, RankNullityAndKernel) {
    using F = TypeParam;
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n)));
        ConstMat<F> u(n, r), v(r, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                u(i, j) = random_scalar<F>(rng, 3);
                v(j, i) = random_scalar<F>(rng, 3);
            }
        const ConstMat<F> a = r ? ConstMat<F>(u * v) : ConstMat<F>(n, n);
        const ConstMat<F> k = kernel_basis(a);
        EXPECT_EQ(rank(a) + k.cols(), n);
        if (k.cols()) {
            EXPECT_TRUE(ConstMat<F>(a * k).is_zero());
        }
        EXPECT_EQ(rank(k), k.cols());
        const ConstMat<F> rb = reduced_range_basis(a);
        EXPECT_EQ(rb.cols(), rank(a));
        if (rb.cols()) {
            EXPECT_EQ(rank(hstack(rb, a)), rank(a));
        }
        const ConstMat<F> rc = complement_basis(rb, n);
        EXPECT_EQ(rank(hstack(rb, rc)), n);
    }
}

TYPED_TEST(FieldTest, InverseOfUnimodularIsExact) {
    using F = TypeParam;
    Rng rng(24);
    for (int t = 0; t < 40; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        const ConstMat<F> s = random_unimodular<F>(rng, n);
        EXPECT_EQ(s * inverse(s), ConstMat<F>::identity(n));
        const F d = determinant(s);
        EXPECT_TRUE(d == F(1) || d == F(-1));
    }
}

TYPED_TEST(FieldTest, SingularInverseIsRejected) {
    using F = TypeParam;
    ConstMat<F> a{{F(1), F(2)}, {F(2), F(4)}};
    EXPECT_FALSE(try_inverse(a).has_value());
    EXPECT_THROW(inverse(a), InvalidInput);
}

TYPED_TEST(FieldTest, RationalInverseRoutesAgree) {
    using F = TypeParam;
    Rng rng(25);
    for (int t = 0; t < 30; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
        const MatPoly<F> a = random_matpoly<F>(rng, n, 2);
        if (det(a).is_zero()) continue;
        const RatMat<F> i1 = inverse_adjugate(a), i2 = inverse_elimination(a);
        EXPECT_EQ(i1, i2);
        EXPECT_EQ(to_ratmat(a) * i1, RatMat<F>::identity(n));
    }
}

TYPED_TEST(FieldTest, TaylorCoefficientsReconstruct) {
    using F = TypeParam;
    Rng rng(26);
    for (int t = 0; t < 30; ++t) {
        const MatPoly<F> a = random_matpoly<F>(rng, 3, 3);
        const F c = random_scalar<F>(rng, 2);
        const auto tc = taylor_coefficients(a, c);
        EXPECT_EQ(tc[0], eval(a, c));
        EXPECT_EQ(reconstruct(tc), a);
        // the j-th coefficient is the j-th derivative at c over j!
        const MatPoly<F> d1 = a.template map<Poly<F>>([](const Poly<F>& p) { return p.derivative(); });
        ASSERT_GT(tc.size(), 1u);
        EXPECT_EQ(tc[1], eval(d1, c));
    }
}

TEST(Matrix, PencilIsLambdaMinusT) {
    const ConstMat<Q> t = oracle::jordan(3, Q(2));
    const MatPoly<Q> p = pencil(t);
    EXPECT_EQ(det(p), power_of_linear(Q(2), 3));
    EXPECT_EQ(eval(p, Q(5)), ConstMat<Q>(scale(Q(5), ConstMat<Q>::identity(3)) - t));
}

TEST(Matrix, DirectSumAndBlocks) {
    ConstMat<Q> a{{Q(1), Q(2)}, {Q(3), Q(4)}};
    ConstMat<Q> b{{Q(5)}};
    const ConstMat<Q> d = direct_sum(a, b);
    EXPECT_EQ(d.block(0, 0, 2, 2), a);
    EXPECT_EQ(d.block(2, 2, 1, 1), b);
    EXPECT_EQ(d(0, 2), Q(0));
    EXPECT_EQ(determinant(d), Q(-10));
}

TEST(Roots, RationalRootsOfPlantedPolynomial) {
    const auto x = Poly<Q>::x();
    const Poly<Q> p = (x - Poly<Q>(Q(1) / Q(2))).pow(2) * (x + Poly<Q>(3)) * (x * x - Poly<Q>(2));
    const auto r = field_roots(p);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], Q(-3));
    EXPECT_EQ(r[1], Q(1) / Q(2));
    EXPECT_TRUE(field_roots(x * x - Poly<Q>(2)).empty());
}

TEST(Roots, GaussianRootsOfPlantedPolynomial) {
    const auto x = Poly<Qi>::x();
    const Poly<Qi> p = (x * x + Poly<Qi>(Qi(1))) * (x - Poly<Qi>(Qi(Q(1), Q(2))));
    const auto r = field_roots(p);
    ASSERT_EQ(r.size(), 3u);
    for (const auto& z : r) EXPECT_TRUE(p.eval(z).is_zero()) << z;
}
