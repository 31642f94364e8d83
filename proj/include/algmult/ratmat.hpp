#pragma once

// Matrices over F[λ] and F(λ): evaluation, exact determinants, adjugates,
// inverses and Taylor coefficients.

#include <vector>

#include "algmult/linalg.hpp"
#include "algmult/ratfunc.hpp"

namespace algmult {

template <ExactField F>
using MatPoly = Matrix<Poly<F>>;

template <ExactField F>
using RatMat = Matrix<RationalFunction<F>>;

/// Coefficients 𝔏_j = 𝔏^{(j)}(λ₀)/j! of a matrix polynomial recentered at λ₀.
template <ExactField F>
struct TaylorCoefficients {
    F center;
    std::vector<ConstMat<F>> coefficients;

    std::size_t size() const { return coefficients.size(); }
    /// 𝔏_j, or the zero matrix beyond the degree.
    ConstMat<F> operator[](std::size_t j) const {
        if (j < coefficients.size()) return coefficients[j];
        const auto& c0 = coefficients.front();
        return ConstMat<F>(c0.rows(), c0.cols());
    }
};

template <ExactField F>
int max_degree(const MatPoly<F>& a) {
    int d = -1;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, a(i, j).degree());
    return d;
}

template <ExactField F>
ConstMat<F> eval(const MatPoly<F>& a, const F& at) {
    return a.template map<F>([&](const Poly<F>& p) { return p.eval(at); });
}

template <ExactField F>
ConstMat<F> eval(const RatMat<F>& a, const F& at) {
    return a.template map<F>([&](const RationalFunction<F>& f) { return f.eval(at); });
}

template <ExactField F>
MatPoly<F> to_matpoly(const ConstMat<F>& a) {
    return a.template map<Poly<F>>([](const F& v) { return Poly<F>(v); });
}

template <ExactField F>
RatMat<F> to_ratmat(const MatPoly<F>& a) {
    return a.template map<RationalFunction<F>>([](const Poly<F>& p) { return RationalFunction<F>(p); });
}

template <ExactField F>
RatMat<F> to_ratmat(const ConstMat<F>& a) {
    return a.template map<RationalFunction<F>>([](const F& v) { return RationalFunction<F>(v); });
}

/// Exact conversion back to polynomials; throws if some entry has a nontrivial denominator.
template <ExactField F>
MatPoly<F> to_matpoly(const RatMat<F>& a) {
    return a.template map<Poly<F>>([](const RationalFunction<F>& f) {
        if (!f.is_polynomial()) throw InvalidInput("rational matrix entry is not a polynomial");
        return f.num();
    });
}

/// Constant matrix acting on a polynomial matrix.
template <ExactField F>
MatPoly<F> operator*(const ConstMat<F>& c, const MatPoly<F>& a) {
    return to_matpoly(c) * a;
}
template <ExactField F>
MatPoly<F> operator*(const MatPoly<F>& a, const ConstMat<F>& c) {
    return a * to_matpoly(c);
}

/// Determinant by fraction-free (Bareiss) elimination over F[λ].
template <ExactField F>
Poly<F> det(MatPoly<F> a) {
    if (!a.is_square()) throw InvalidInput("det of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Poly<F>(F(1));
    Poly<F> prev(F(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) return {};
            a.swap_rows(p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
            a(i, k) = Poly<F>();
        }
        prev = a(k, k);
    }
    Poly<F> d = a(n - 1, n - 1);
    return negate ? -d : d;
}

namespace detail {

template <ExactField F>
MatPoly<F> minor_matrix(const MatPoly<F>& a, std::size_t skip_row, std::size_t skip_col) {
    const std::size_t n = a.rows();
    MatPoly<F> m(n - 1, n - 1);
    for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == skip_row) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
            if (j == skip_col) continue;
            m(mi, mj++) = a(i, j);
        }
        ++mi;
    }
    return m;
}

}  // namespace detail

/// Classical adjugate: adj(A)_{ij} = (−1)^{i+j} det A[without row j, col i].
template <ExactField F>
MatPoly<F> adjugate(const MatPoly<F>& a) {
    if (!a.is_square()) throw InvalidInput("adjugate of non-square matrix");
    const std::size_t n = a.rows();
    MatPoly<F> adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj(0, 0) = Poly<F>(F(1));
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly<F> m = det(detail::minor_matrix(a, j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? m : -m;
        }
    return adj;
}

/// Inverse as adj(A)/det(A).
template <ExactField F>
RatMat<F> inverse_adjugate(const MatPoly<F>& a) {
    Poly<F> d = det(a);
    if (d.is_zero()) throw DegeneratePath();
    MatPoly<F> adj = adjugate(a);
    return adj.template map<RationalFunction<F>>([&](const Poly<F>& p) { return RationalFunction<F>(p, d); });
}

/// Inverse by Gauss–Jordan elimination over the fraction field F(λ).
template <ExactField F>
RatMat<F> inverse_elimination(const RatMat<F>& a) {
    if (!a.is_square()) throw InvalidInput("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RatMat<F> m = hstack(a, RatMat<F>::identity(n));
    for (std::size_t c = 0; c < n; ++c) {
        // Lowest-degree nonzero pivot keeps intermediate fractions small.
        std::size_t p = n;
        for (std::size_t i = c; i < n; ++i)
            if (!m(i, c).is_zero() &&
                (p == n || m(i, c).num().degree() + m(i, c).den().degree() <
                               m(p, c).num().degree() + m(p, c).den().degree()))
                p = i;
        if (p == n) throw DegeneratePath();
        m.swap_rows(p, c);
        const auto inv = m(c, c).inverse();
        for (std::size_t j = 0; j < 2 * n; ++j) m(c, j) = m(c, j) * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c).is_zero()) continue;
            const auto f = m(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j)
                if (!m(c, j).is_zero()) m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return m.block(0, n, n, n);
}

template <ExactField F>
RatMat<F> inverse_elimination(const MatPoly<F>& a) {
    return inverse_elimination(to_ratmat(a));
}

/// Exact inverse of a matrix polynomial; throws DegeneratePath when det ≡ 0.
template <ExactField F>
RatMat<F> inverse(const MatPoly<F>& a) {
    if (!a.is_square()) throw InvalidInput("inverse of non-square matrix");
    if (a.rows() <= 6) return inverse_adjugate(a);
    return inverse_elimination(a);
}

/// Lowest common denominator c of all entries and the polynomial matrix c·A.
template <ExactField F>
std::pair<Poly<F>, MatPoly<F>> clear_denominators(const RatMat<F>& a) {
    Poly<F> c(F(1));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_polynomial()) c = lcm(c, a(i, j).den());
    MatPoly<F> m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j).num() * exact_div(c, a(i, j).den());
    return {c, m};
}

template <ExactField F>
RationalFunction<F> det(const RatMat<F>& a) {
    auto [c, m] = clear_denominators(a);
    return RationalFunction<F>(det(m), c.pow(static_cast<unsigned>(a.rows())));
}

template <ExactField F>
RatMat<F> inverse(const RatMat<F>& a) {
    if (!a.is_square()) throw InvalidInput("inverse of non-square matrix");
    if (a.rows() > 6) return inverse_elimination(a);
    // (M/c)⁻¹ = c·M⁻¹.
    auto [c, m] = clear_denominators(a);
    RatMat<F> inv = inverse_adjugate(m);
    const RationalFunction<F> cf(c);
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j) inv(i, j) = inv(i, j) * cf;
    return inv;
}

template <ExactField F>
TaylorCoefficients<F> taylor_coefficients(const MatPoly<F>& a, const F& center) {
    TaylorCoefficients<F> t;
    t.center = center;
    const int deg = std::max(max_degree(a), 0);
    t.coefficients.assign(static_cast<std::size_t>(deg) + 1, ConstMat<F>(a.rows(), a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Poly<F> s = a(i, j).shift(center);
            for (int k = 0; k <= s.degree(); ++k) t.coefficients[static_cast<std::size_t>(k)](i, j) = s.coeff(k);
        }
    return t;
}

/// Σ_j 𝔏_j (λ − λ₀)^j.
template <ExactField F>
MatPoly<F> reconstruct(const TaylorCoefficients<F>& t) {
    const auto& c0 = t.coefficients.front();
    MatPoly<F> a(c0.rows(), c0.cols());
    Poly<F> basis(F(1));
    const Poly<F> step = Poly<F>::linear_factor(t.center);
    for (const auto& cj : t.coefficients) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!cj(i, j).is_zero()) a(i, j) += basis * cj(i, j);
        basis *= step;
    }
    return a;
}

/// λ·I − T.
template <ExactField F>
MatPoly<F> pencil(const ConstMat<F>& t) {
    if (!t.is_square()) throw InvalidInput("pencil of non-square matrix");
    MatPoly<F> p = -to_matpoly(t);
    for (std::size_t i = 0; i < t.rows(); ++i) p(i, i) += Poly<F>::x();
    return p;
}

}  // namespace algmult
