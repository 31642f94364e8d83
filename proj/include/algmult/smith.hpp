#pragma once

// Smith normal form over F[λ], local partial multiplicities at λ₀ and the
// Jordan linearization with explicit unimodular witnesses.

#include <algorithm>
#include <optional>
#include <type_traits>
#include <vector>

#include "algmult/schur.hpp"

namespace algmult {

/// E·A·F = diag(d₁, …, d_n) with d_i | d_{i+1}, d_i monic, E and F unimodular.
template <ExactField F>
struct SmithForm {
    std::vector<Poly<F>> invariant_factors;
    MatPoly<F> E, F_;
};

namespace detail {

template <ExactField F>
bool is_unimodular(const MatPoly<F>& m) {
    const Poly<F> d = det(m);
    return !d.is_zero() && d.is_constant();
}

template <ExactField F>
void add_row_multiple(MatPoly<F>& m, std::size_t dst, std::size_t src, const Poly<F>& q) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(src, j).is_zero()) m(dst, j) -= q * m(src, j);
}

template <ExactField F>
void add_col_multiple(MatPoly<F>& m, std::size_t dst, std::size_t src, const Poly<F>& q) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
}

}  // namespace detail

/// Smith form. Pivots are chosen by minimal degree, then minimal order at
/// `center` (when given), then row-major position.
template <ExactField F>
SmithForm<F> smith_form(const MatPoly<F>& a, std::type_identity_t<std::optional<F>> center = {}) {
    if (!a.is_square()) throw InvalidInput("smith_form of non-square matrix");
    if (det(a).is_zero()) throw DegeneratePath();
    const std::size_t n = a.rows();
    MatPoly<F> m = a;
    MatPoly<F> e = MatPoly<F>::identity(n), f = MatPoly<F>::identity(n);

    auto order_key = [&](const Poly<F>& p) -> std::int64_t {
        return center ? ord_at(p, *center).value() : 0;
    };

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (m(i, j).is_zero()) continue;
                    if (pi == n) {
                        pi = i, pj = j;
                        continue;
                    }
                    const int d = m(i, j).degree(), dp = m(pi, pj).degree();
                    if (d < dp || (d == dp && order_key(m(i, j)) < order_key(m(pi, pj)))) pi = i, pj = j;
                }
            ALGMULT_ENSURE(pi != n, "Smith reduction ran out of pivots on a nonsingular matrix");
            m.swap_rows(t, pi);
            e.swap_rows(t, pi);
            m.swap_cols(t, pj);
            f.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (m(i, t).is_zero()) continue;
                const Poly<F> q = divmod(m(i, t), m(t, t)).first;
                detail::add_row_multiple(m, i, t, q);
                detail::add_row_multiple(e, i, t, q);
                if (!m(i, t).is_zero()) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (m(t, j).is_zero()) continue;
                const Poly<F> q = divmod(m(t, j), m(t, t)).first;
                detail::add_col_multiple(m, j, t, q);
                detail::add_col_multiple(f, j, t, q);
                if (!m(t, j).is_zero()) clean = false;
            }
            if (!clean) continue;

            // The pivot must divide every remaining entry.
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divmod(m(i, j), m(t, t)).second.is_zero()) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            detail::add_row_multiple(m, t, bad, Poly<F>(F(-1)));
            detail::add_row_multiple(e, t, bad, Poly<F>(F(-1)));
        }
        const F inv = F(1) / m(t, t).lead();
        for (std::size_t j = 0; j < n; ++j) {
            m(t, j) *= inv;
            e(t, j) *= inv;
        }
    }

    SmithForm<F> s;
    for (std::size_t i = 0; i < n; ++i) s.invariant_factors.push_back(m(i, i));
    s.E = std::move(e);
    s.F_ = std::move(f);
    ALGMULT_ENSURE(s.E * a * s.F_ == MatPoly<F>::diagonal(s.invariant_factors), "Smith identity E·A·F = D fails");
    ALGMULT_ENSURE(detail::is_unimodular(s.E) && detail::is_unimodular(s.F_), "Smith transforms are not unimodular");
    for (std::size_t i = 0; i + 1 < n; ++i)
        ALGMULT_ENSURE(divmod(s.invariant_factors[i + 1], s.invariant_factors[i]).second.is_zero(),
                       "invariant factors do not form a divisibility chain");
    return s;
}

template <ExactField F>
struct LocalSmithForm {
    F center;
    /// κ₁ ≥ κ₂ ≥ … ≥ κ_N ≥ 1.
    std::vector<std::int64_t> kappa;
    SmithForm<F> smith;

    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto k : kappa) s += k;
        return s;
    }
};

template <ExactField F>
LocalSmithForm<F> local_partial_multiplicities(const MatPoly<F>& a, const F& center) {
    LocalSmithForm<F> lsf;
    lsf.center = center;
    lsf.smith = smith_form(a, center);
    for (const auto& d : lsf.smith.invariant_factors) {
        const std::int64_t k = ord_at(d, center).value();
        if (k > 0) lsf.kappa.push_back(k);
    }
    std::sort(lsf.kappa.rbegin(), lsf.kappa.rend());
    return lsf;
}

/// For rational input the common denominator is a unit at λ₀ and is cleared first.
template <ExactField F>
LocalSmithForm<F> local_partial_multiplicities(const RatMat<F>& a, const F& center) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).regular_at(center)) throw InvalidInput("matrix has a pole at the center");
    return local_partial_multiplicities(clear_denominators(a).second, center);
}

template <ExactField F>
LocalSmithForm<F> local_smith_of_schur(const SchurOperator<F>& so) {
    if (so.size() == 0) return LocalSmithForm<F>{so.center, {}, {}};
    LocalSmithForm<F> lsf = local_partial_multiplicities(so.S, so.center);
    // 𝒮(λ₀) = 0, so every invariant factor vanishes at the center.
    ALGMULT_ENSURE(lsf.kappa.size() == so.size(), "Schur operator has a partial multiplicity equal to zero");
    return lsf;
}

template <ExactField F>
LocalSmithForm<F> local_smith_of_schur(const Path<F>& path, const ProjectionPair<F>& pair) {
    detail::reject_degenerate(path);
    return local_smith_of_schur(schur_operator(path, pair));
}

/// 𝓛 = ⊕ J_{κᵢ}(λ₀) with diag((λ−λ₀)^{κ₁}, …, (λ−λ₀)^{κ_N}) ⊕ I_{M−N} = 𝔓₁ (λI − 𝓛) 𝔓₂.
template <ExactField F>
struct Linearization {
    F center;
    std::vector<std::int64_t> kappa;
    std::size_t M = 0;
    ConstMat<F> L;
    MatPoly<F> P1, P2;
    /// The padded local Smith diagonal.
    MatPoly<F> target;
};

namespace detail {

/// Jordan block with eigenvalue c and ones on the superdiagonal.
template <ExactField F>
ConstMat<F> jordan_block(std::size_t size, const F& c) {
    ConstMat<F> j(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        j(i, i) = c;
        if (i + 1 < size) j(i, i + 1) = F(1);
    }
    return j;
}

}  // namespace detail

template <ExactField F>
Linearization<F> build_linearization(const std::vector<std::int64_t>& kappa, const F& center) {
    if (kappa.empty()) throw InvalidInput("linearization needs at least one partial multiplicity");
    Linearization<F> lin;
    lin.center = center;
    lin.kappa = kappa;
    for (auto k : kappa) {
        if (k < 1) throw InvalidInput("partial multiplicities must be positive");
        lin.M += static_cast<std::size_t>(k);
    }
    const std::size_t M = lin.M, N = kappa.size();
    const Poly<F> mu = Poly<F>::linear_factor(center);
    lin.L = ConstMat<F>(M, M);
    MatPoly<F> e(M, M), f(M, M);
    std::vector<std::size_t> last_of_block;
    std::size_t off = 0;
    for (auto kk : kappa) {
        const auto k = static_cast<std::size_t>(kk);
        lin.L.set_block(off, off, detail::jordan_block(k, center));
        // F_b = [e_2, …, e_k, v] with v = (1, μ, …, μ^{k−1}).
        for (std::size_t j = 0; j + 1 < k; ++j) f(off + j + 1, off + j) = Poly<F>(F(1));
        for (std::size_t i = 0; i < k; ++i) f(off + i, off + k - 1) = mu.pow(static_cast<unsigned>(i));
        // E_b = diag(−1, …, −1, 1) · [μ^{i−j}]_{i≥j}.
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                Poly<F> v = mu.pow(static_cast<unsigned>(i - j));
                e(off + i, off + j) = (i + 1 < k) ? -v : v;
            }
        last_of_block.push_back(off + k - 1);
        off += k;
    }
    // Π sends the last coordinate of block b to position b and the rest, in order, to N, N+1, ….
    ConstMat<F> perm(M, M);
    std::vector<bool> used(M, false);
    for (std::size_t b = 0; b < N; ++b) {
        perm(b, last_of_block[b]) = F(1);
        used[last_of_block[b]] = true;
    }
    for (std::size_t i = 0, pos = N; i < M; ++i)
        if (!used[i]) perm(pos++, i) = F(1);
    lin.P1 = perm * e;
    lin.P2 = f * ConstMat<F>(perm.transpose());
    lin.target = MatPoly<F>::identity(M);
    for (std::size_t b = 0; b < N; ++b) lin.target(b, b) = mu.pow(static_cast<unsigned>(kappa[b]));
    ALGMULT_ENSURE(lin.P1 * pencil(lin.L) * lin.P2 == lin.target, "linearization identity fails");
    ALGMULT_ENSURE(detail::is_unimodular(lin.P1) && detail::is_unimodular(lin.P2),
                   "linearization witnesses are not unimodular");
    return lin;
}

template <ExactField F>
Linearization<F> build_linearization(const LocalSmithForm<F>& lsf) {
    return build_linearization(lsf.kappa, lsf.center);
}

template <ExactField F>
ExtendedNat chi_via_smith(const Path<F>& path, const ProjectionPair<F>& pair) {
    return local_smith_of_schur(path, pair).total();
}

}  // namespace algmult
