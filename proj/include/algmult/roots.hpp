#pragma once

// Roots of univariate polynomials that lie in the coefficient field.
//
// Over Q the search is exact and complete: real roots of the monic integer
// transform are isolated with a Sturm sequence and integer candidates are
// tested exactly. Over Q(i) candidate roots come from numerical eigenvalues
// of the companion matrix, are snapped to Gaussian rationals by continued
// fractions and then accepted only after exact verification; every reported
// root is a true root, completeness holds whenever double precision can
// separate the roots.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "algmult/poly.hpp"

namespace algmult {

namespace detail {

template <ExactField F>
Poly<F> squarefree_part(const Poly<F>& p) {
    Poly<F> g = gcd(p, p.derivative());
    return g.is_constant() ? p.monic() : exact_div(p, g).monic();
}

/// Sturm chain of a squarefree polynomial.
inline std::vector<Poly<Rational>> sturm_chain(const Poly<Rational>& p) {
    std::vector<Poly<Rational>> chain{p, p.derivative()};
    while (!chain.back().is_constant()) {
        Poly<Rational> r = -divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<Poly<Rational>>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& q : chain) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// Integer roots of a squarefree polynomial with integer coefficients, inside (lo, hi].
inline void isolate_integer_roots(const Poly<Rational>& p, const std::vector<Poly<Rational>>& chain,
                                  const mpz_class& lo, const mpz_class& hi, int v_lo, int v_hi,
                                  std::vector<mpz_class>& out) {
    const int count = v_lo - v_hi;
    if (count <= 0) return;
    if (hi - lo == 1) {
        if (p.eval(Rational(hi, mpz_class(1))).is_zero()) out.push_back(hi);
        return;
    }
    mpz_class mid = lo + (hi - lo) / 2;
    int v_mid = sign_variations(chain, Rational(mid, mpz_class(1)));
    isolate_integer_roots(p, chain, lo, mid, v_lo, v_mid, out);
    isolate_integer_roots(p, chain, mid, hi, v_mid, v_hi, out);
}

/// Best rational approximations of x whose error is below tol.
inline std::vector<Rational> snap_to_rationals(long double x, long double tol) {
    std::vector<Rational> out;
    if (std::fabs(x) < tol) out.emplace_back(0);
    // Continued-fraction convergents h/k.
    mpz_class h_prev(1), h(0), k_prev(0), k(1);
    long double rest = x;
    for (int it = 0; it < 40 && out.size() < 4; ++it) {
        long double a = std::floor(rest);
        if (std::fabs(a) > 1e18L) break;
        mpz_class ai(static_cast<double>(a));
        mpz_class h_next = ai * h_prev + h, k_next = ai * k_prev + k;
        h = h_prev, k = k_prev;
        h_prev = h_next, k_prev = k_next;
        // After the swap h_prev/k_prev is the newest convergent.
        Rational conv(h_prev, k_prev);
        long double err = std::fabs(static_cast<long double>(conv.to_double()) - x);
        if (err <= tol * std::max<long double>(1, std::fabs(x))) out.push_back(conv);
        long double frac = rest - a;
        if (frac < 1e-30L) break;
        rest = 1 / frac;
    }
    return out;
}

template <ExactField F>
std::vector<std::complex<long double>> numeric_roots(const Poly<F>& monic_p) {
    const int n = monic_p.degree();
    std::vector<std::complex<long double>> roots;
    if (n < 1) return roots;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic_p.coeff(i).to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<std::complex<long double>> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        auto z = monic_p.coeff(i).to_complex();
        c[static_cast<std::size_t>(i)] = {z.real(), z.imag()};
    }
    for (int r = 0; r < n; ++r) {
        std::complex<long double> z(solver.eigenvalues()[r].real(), solver.eigenvalues()[r].imag());
        // Newton polishing in extended precision.
        for (int it = 0; it < 8; ++it) {
            std::complex<long double> f = 0, df = 0;
            for (int i = n; i >= 0; --i) {
                df = df * z + f;
                f = f * z + c[static_cast<std::size_t>(i)];
            }
            if (std::abs(df) == 0) break;
            z -= f / df;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace detail

/// Distinct rational roots, ascending.
inline std::vector<Rational> field_roots(const Poly<Rational>& p) {
    if (p.is_zero()) throw InvalidInput("field_roots: zero polynomial");
    std::vector<Rational> roots;
    Poly<Rational> s = detail::squarefree_part(p);
    if (!s.is_constant() && s.coeff(0).is_zero()) {
        roots.emplace_back(0);
        s = exact_div(s, Poly<Rational>::x());
    }
    if (s.degree() >= 1) {
        mpz_class den(1);
        for (const auto& a : s.coeffs()) den = lcm(den, a.den());
        std::vector<mpz_class> a;
        for (const auto& v : s.coeffs()) a.push_back(v.num() * (den / v.den()));
        const int n = s.degree();
        const mpz_class& an = a.back();
        // w = a_n·λ turns s into a monic integer polynomial whose rational roots are integers.
        std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
        mpz_class bound(0), scale(1);
        for (int k = n - 1; k >= 0; --k) {
            c[static_cast<std::size_t>(k)] = Rational(a[static_cast<std::size_t>(k)] * scale, mpz_class(1));
            bound = std::max(bound, mpz_class(abs(a[static_cast<std::size_t>(k)] * scale)));
            scale *= an;
        }
        c[static_cast<std::size_t>(n)] = Rational(1);
        Poly<Rational> monic_int(std::move(c));
        bound += 1;
        auto chain = detail::sturm_chain(monic_int);
        std::vector<mpz_class> ints;
        mpz_class lo = -bound - 1, hi = bound;
        detail::isolate_integer_roots(monic_int, chain, lo, hi, detail::sign_variations(chain, Rational(lo, 1)),
                                      detail::sign_variations(chain, Rational(hi, 1)), ints);
        for (const auto& w : ints) roots.emplace_back(w, an);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Distinct Gaussian-rational roots (see the header comment for the completeness caveat).
inline std::vector<GaussianRational> field_roots(const Poly<GaussianRational>& p) {
    if (p.is_zero()) throw InvalidInput("field_roots: zero polynomial");
    std::vector<GaussianRational> roots;
    Poly<GaussianRational> s = detail::squarefree_part(p);
    auto accept = [&](const GaussianRational& z) {
        if (std::find(roots.begin(), roots.end(), z) != roots.end()) return;
        if (s.eval(z).is_zero()) roots.push_back(z);
    };
    if (s.degree() < 1) return roots;
    for (const auto& z : detail::numeric_roots(s)) {
        constexpr long double tol = 1e-9L;
        auto res = detail::snap_to_rationals(z.real(), tol);
        auto ims = detail::snap_to_rationals(z.imag(), tol);
        for (const auto& a : res)
            for (const auto& b : ims) accept(GaussianRational(a, b));
    }
    // Order by (real, imaginary) for deterministic output.
    std::sort(roots.begin(), roots.end(), [](const GaussianRational& x, const GaussianRational& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

}  // namespace algmult
