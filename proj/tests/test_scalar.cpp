// Exact scalars, polynomials and rational functions.

#include <gtest/gtest.h>

#include "algmult/random.hpp"
#include "algmult/ratfunc.hpp"
#include "oracles.hpp"

using namespace algmult;
using Q = Rational;
using Qi = GaussianRational;

TEST(Rational, ParsesAndPrintsCanonicalForm) {
    EXPECT_EQ(Q::parse("6/4").to_string(), "3/2");
    EXPECT_EQ(Q::parse(" -2 ").to_string(), "-2");
    EXPECT_EQ(Q::parse("0/7"), Q(0));
    EXPECT_EQ(Q::parse("3/-6"), Q(-1) / Q(2));
}

TEST(Rational, RejectsMalformedText) {
    for (const char* bad : {"", "1/0", "abc", "1.5", "1//2", "2/"}) EXPECT_THROW(Q::parse(bad), InvalidInput) << bad;
}

TEST(Rational, FieldAxiomsOnRandomValues) {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        const Q a = random_scalar<Q>(rng, 9), b = random_scalar<Q>(rng, 9), c = random_scalar<Q>(rng, 9);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a - a, Q(0));
        if (!b.is_zero()) {
            EXPECT_EQ(a / b * b, a);
        }
    }
}

TEST(Rational, DivisionByZeroThrows) { EXPECT_THROW(Q(1) / Q(0), InvalidInput); }

TEST(Gaussian, ImaginaryUnitSquaresToMinusOne) {
    EXPECT_EQ(Qi::i() * Qi::i(), Qi(-1));
    EXPECT_EQ(Qi::parse("1+2i").to_string(), "1+2i");
    EXPECT_EQ(Qi::parse("-i"), -Qi::i());
    EXPECT_EQ(Qi::parse("1/2-3/4i"), Qi(Q(1) / Q(2), Q(-3) / Q(4)));
}

TEST(Gaussian, InverseMatchesConjugateOverNorm) {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const Qi z = random_scalar<Qi>(rng, 5);
        if (z.is_zero()) continue;
        EXPECT_EQ(z.inverse(), z.conj() * Qi(z.norm().inverse()));
        EXPECT_EQ(z * z.inverse(), Qi(1));
    }
}

TEST(ExtendedNat, InfinityAbsorbsAddition) {
    EXPECT_EQ(ExtendedNat(2) + ExtendedNat(3), ExtendedNat(5));
    EXPECT_TRUE((ExtendedNat(2) + ExtendedNat::infinite()).is_infinite());
    EXPECT_LT(ExtendedNat(100), ExtendedNat::infinite());
    EXPECT_EQ(ExtendedNat::infinite().to_string(), "inf");
}

TEST(Poly, DivisionWithRemainder) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<Q> ca(static_cast<std::size_t>(rng.uniform(1, 6))), cb(static_cast<std::size_t>(rng.uniform(1, 4)));
        for (auto& v : ca) v = random_scalar<Q>(rng, 5);
        for (auto& v : cb) v = random_scalar<Q>(rng, 5);
        const Poly<Q> a(ca), b(cb);
        if (b.is_zero()) continue;
        const auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Poly, GcdOfPlantedCommonFactor) {
    const auto x = Poly<Q>::x();
    const Poly<Q> common = (x - Poly<Q>(2)) * (x * x + Poly<Q>(1));
    const Poly<Q> a = common * (x + Poly<Q>(3)), b = common * (x - Poly<Q>(5)).pow(2);
    EXPECT_EQ(gcd(a, b), common.monic());
}

TEST(Poly, OrderAtPointAgreesWithRepeatedDerivatives) {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const Q c = random_scalar<Q>(rng, 3);
        const auto k = static_cast<unsigned>(rng.uniform(0, 4));
        Poly<Q> cof(random_scalar<Q>(rng, 3) + Q(10));
        cof *= Poly<Q>::linear_factor(c + Q(1));
        const Poly<Q> p = power_of_linear(c, k) * cof;
        EXPECT_EQ(ord_at(p, c), ExtendedNat(oracle::root_multiplicity(p, c)));
        EXPECT_EQ(mult_via_gcd(p, c), ord_at(p, c));
    }
    EXPECT_TRUE(ord_at(Poly<Q>(), Q(0)).is_infinite());
}

TEST(Poly, ShiftIsComposition) {
    const Poly<Q> p{Q(1), Q(-2), Q(0), Q(3)};
    const Poly<Q> s = p.shift(Q(2));
    for (int v = -3; v <= 3; ++v) EXPECT_EQ(s.eval(Q(v)), p.eval(Q(v) + Q(2)));
}

TEST(Poly, FormatsWithVariableName) {
    const auto x = Poly<Q>::x();
    EXPECT_EQ((x * x - Poly<Q>(2)).to_string(), "λ^2 - 2");
    EXPECT_EQ((x + Poly<Q>(1)).to_string("x"), "x + 1");
}

TEST(RationalFunction, ReducesToLowestTerms) {
    const auto x = Poly<Q>::x();
    const RationalFunction<Q> f((x - Poly<Q>(1)) * (x + Poly<Q>(2)), (x - Poly<Q>(1)) * Poly<Q>(2));
    EXPECT_TRUE(f.is_polynomial());
    EXPECT_EQ(f.eval(Q(4)), Q(3));
}

TEST(RationalFunction, LaurentExpansionOfGeometricSeries) {
    // 1/(1 − λ) = Σ λ^k
    const auto x = Poly<Q>::x();
    const RationalFunction<Q> f(Poly<Q>(1), Poly<Q>(1) - x);
    const auto e = laurent_expand(f, Q(0), 6);
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(e.coefficient(k), Q(1));
    EXPECT_EQ(e.coefficient(-1), Q(0));
}

TEST(RationalFunction, LaurentExpansionWithPole) {
    // 1/(λ²(1 + λ)) = λ⁻² − λ⁻¹ + 1 − λ + …
    const auto x = Poly<Q>::x();
    const RationalFunction<Q> f(Poly<Q>(1), x * x * (x + Poly<Q>(1)));
    const auto e = laurent_expand(f, Q(0), 3);
    EXPECT_EQ(e.lowest_exponent, -2);
    for (int k = -2; k <= 3; ++k) EXPECT_EQ(e.coefficient(k), (k % 2 == 0) ? Q(1) : Q(-1)) << k;
    EXPECT_EQ(pole_order(f, Q(0)), 2);
    EXPECT_EQ(valuation(f, Q(0)), -2);
    EXPECT_EQ(valuation(f, Q(-1)), -1);
    EXPECT_EQ(valuation(f, Q(5)), 0);
}

TEST(RationalFunction, GaussianLaurentCoefficients) {
    // 1/(λ − i) around 0: −Σ λ^k / i^{k+1}
    const auto x = Poly<Qi>::x();
    const RationalFunction<Qi> f(Poly<Qi>(Qi(1)), x - Poly<Qi>(Qi::i()));
    const auto e = laurent_expand(f, Qi(0), 4);
    Qi ipow = Qi::i();
    for (int k = 0; k <= 4; ++k) {
        EXPECT_EQ(e.coefficient(k), -ipow.inverse());
        ipow *= Qi::i();
    }
}
