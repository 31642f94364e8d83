#pragma once

// Differentials of the determinant map and the local intersection index of a
// pencil line λI − T with the determinantal variety {det = 0}.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "algmult/smith.hpp"

namespace algmult {

/// Size and order limits for the combinatorial differential sum.
inline constexpr std::size_t kDifferentialMaxSize = 4;
inline constexpr std::size_t kDifferentialMaxOrder = 6;

/// ∂^k det / ∂x_{r₁c₁}⋯∂x_{r_k c_k} evaluated at L.
///
/// det is linear in each row and each column, so the partial vanishes when a row
/// or column repeats; otherwise it is ± the complementary minor, obtained here by
/// replacing row r_j with the unit row e_{c_j}.
template <ExactField F>
F det_partial(const ConstMat<F>& l, const std::vector<std::pair<std::size_t, std::size_t>>& vars) {
    if (!l.is_square()) throw InvalidInput("det_partial of non-square matrix");
    const std::size_t n = l.rows();
    std::vector<bool> row_used(n, false), col_used(n, false);
    ConstMat<F> m = l;
    for (auto [r, c] : vars) {
        if (r >= n || c >= n) throw InvalidInput("det_partial: variable index out of range");
        if (row_used[r] || col_used[c]) return F(0);
        row_used[r] = col_used[c] = true;
        for (std::size_t j = 0; j < n; ++j) m(r, j) = F(0);
        m(r, c) = F(1);
    }
    return determinant(m);
}

namespace detail {

/// Principal minor of L on the indices outside `mask`.
template <ExactField F>
F complementary_principal_minor(const ConstMat<F>& l, unsigned mask) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < l.rows(); ++i)
        if (!(mask & (1u << i))) keep.push_back(i);
    ConstMat<F> m(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) m(i, j) = l(keep[i], keep[j]);
    return determinant(m);
}

}  // namespace detail

/// 𝒟^k(L)[I_N]: the sum over all k-tuples of diagonal variables of the k-th
/// mixed partial of det at L.
template <ExactField F>
F det_differential_sum(const ConstMat<F>& l, std::size_t k) {
    if (!l.is_square()) throw InvalidInput("det_differential_sum of non-square matrix");
    const std::size_t n = l.rows();
    if (k < 1) throw InvalidInput("det_differential_sum: order must be at least 1");
    if (n > kDifferentialMaxSize || k > kDifferentialMaxOrder)
        throw FeasibilityError("det_differential_sum is capped at N <= 4 and k <= 6");
    std::map<unsigned, F> minors;
    F total(0);
    std::vector<std::size_t> tuple(k, 0);
    for (;;) {
        unsigned mask = 0;
        bool repeated = false;
        for (auto i : tuple) {
            if (mask & (1u << i)) repeated = true;
            mask |= 1u << i;
        }
        if (!repeated) {
            auto it = minors.find(mask);
            if (it == minors.end()) it = minors.emplace(mask, detail::complementary_principal_minor(l, mask)).first;
            total += it->second;
        }
        std::size_t pos = 0;
        while (pos < k && ++tuple[pos] == n) tuple[pos++] = 0;
        if (pos == k) break;
    }
    return total;
}

/// r-th derivative of det(λI − T) at λ₀.
template <ExactField F>
F det_derivative(const ConstMat<F>& t, const F& center, std::size_t r) {
    Poly<F> p = det(pencil(t));
    for (std::size_t i = 0; i < r; ++i) p = p.derivative();
    return p.eval(center);
}

template <ExactField F>
struct TangentOrderReport {
    F center;
    /// Minimal 𝔪 ≥ 1 with 𝒟^𝔪(λ₀I − T)[I] ≠ 0; 0 when λ₀ is not an eigenvalue.
    std::optional<std::size_t> m;
    /// 𝒟^i(λ₀I − T)[I] for i = 1, 2, … up to 𝔪 (or the search limit).
    std::vector<F> values;
    /// Whether the combinatorial route was run (and agreed) at each order.
    std::vector<bool> cross_checked;
    /// Line λI lies in the i-th tangent variety iff the i-th value vanishes.
    std::vector<bool> line_in_tangent;
    bool combinatorial_skipped = false;
};

template <ExactField F>
TangentOrderReport<F> tangent_order(const ConstMat<F>& t, const F& center, std::optional<std::size_t> max_order = {}) {
    if (!t.is_square() || t.rows() == 0) throw InvalidInput("tangent_order needs a nonempty square matrix");
    const std::size_t n = t.rows();
    TangentOrderReport<F> rep;
    rep.center = center;
    const ConstMat<F> l0 = eval(pencil(t), center);
    if (!determinant(l0).is_zero()) {
        rep.m = 0;
        return rep;
    }
    const std::size_t limit = std::min(n, max_order.value_or(n));
    for (std::size_t i = 1; i <= limit; ++i) {
        const F v = det_derivative(t, center, i);
        bool checked = false;
        if (n <= kDifferentialMaxSize && i <= kDifferentialMaxOrder) {
            ALGMULT_ENSURE(det_differential_sum(l0, i) == v, "determinant differential disagrees with derivative");
            checked = true;
        } else {
            rep.combinatorial_skipped = true;
        }
        rep.values.push_back(v);
        rep.cross_checked.push_back(checked);
        rep.line_in_tangent.push_back(v.is_zero());
        if (!v.is_zero()) {
            rep.m = i;
            break;
        }
    }
    return rep;
}

/// x_{row,col} = a·x₁ + b, one of the linear equations cutting out the line.
template <ExactField F>
struct LinearGenerator {
    std::size_t row = 0, col = 0;
    F a, b;
};

template <ExactField F>
struct IntersectionIndexResult {
    F center;
    std::int64_t index = 0;
    /// det restricted to the line, as a polynomial in x₁.
    Poly<F> reduced_generator;
    /// Point x₁ = λ₀ − t₁ where the order is taken.
    F shifted_center;
    std::vector<LinearGenerator<F>> generators;
    /// Size of the monomial basis {1, …, x₁^{𝔪−1}} of the local quotient.
    std::int64_t monomial_basis_size = 0;
};

/// Local intersection index of the line {λI − T} with det⁻¹(0) at λ₀I − T.
template <ExactField F>
IntersectionIndexResult<F> intersection_index_pencil(const ConstMat<F>& t, const F& center) {
    if (!t.is_square() || t.rows() == 0) throw InvalidInput("intersection index needs a nonempty square matrix");
    const std::size_t n = t.rows();
    IntersectionIndexResult<F> res;
    res.center = center;
    const F t1 = t(0, 0);
    // λ = x₁ + t₁; diagonal x_ii = x₁ + t₁ − t_ii, off-diagonal x_ij = −t_ij.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == 0 && j == 0) continue;
            if (i == j)
                res.generators.push_back({i, j, F(1), t1 - t(i, i)});
            else
                res.generators.push_back({i, j, F(0), -t(i, j)});
        }
    MatPoly<F> sub(n, n);
    sub(0, 0) = Poly<F>::x();
    for (const auto& g : res.generators) sub(g.row, g.col) = Poly<F>(std::vector<F>{g.b, g.a});
    res.reduced_generator = det(sub);
    res.shifted_center = center - t1;
    const ExtendedNat ord = ord_at(res.reduced_generator, res.shifted_center);
    ALGMULT_ENSURE(ord.is_finite(), "determinant vanishes identically on a pencil line");
    res.index = ord.value();
    // Independent count: the local quotient has dimension deg gcd(g, (x₁ − c)^{deg g}).
    const int dg = res.reduced_generator.degree();
    const Poly<F> local = gcd(res.reduced_generator, power_of_linear(res.shifted_center, static_cast<unsigned>(dg)));
    res.monomial_basis_size = local.degree();
    ALGMULT_ENSURE(res.monomial_basis_size == res.index, "monomial basis size differs from the vanishing order");
    return res;
}

template <ExactField F>
struct TangentMultiplicityCheck {
    ExtendedNat chi;
    std::int64_t index = 0;
    std::size_t tangent = 0;
    bool agree = false;
};

/// ord det(λI − T) = intersection index = tangent order.
template <ExactField F>
TangentMultiplicityCheck<F> tangent_multiplicity_check(const ConstMat<F>& t, const F& center) {
    TangentMultiplicityCheck<F> r;
    r.chi = chi_via_det(Path<F>(pencil(t)), center);
    r.index = intersection_index_pencil(t, center).index;
    const auto tr = tangent_order(t, center);
    r.tangent = tr.m.value_or(0);
    r.agree = r.chi == ExtendedNat(r.index) && r.chi == ExtendedNat(static_cast<std::int64_t>(r.tangent));
    return r;
}

template <ExactField F>
struct PipelineResult {
    LocalSmithForm<F> local_smith;
    std::optional<Linearization<F>> linearization;
    std::int64_t index = 0;
    std::optional<IntersectionIndexResult<F>> intersection;
};

/// Schur operator → local Smith form → linearization 𝓛 → intersection index of λI − 𝓛.
template <ExactField F>
PipelineResult<F> linearization_pipeline(const Path<F>& path, const ProjectionPair<F>& pair) {
    PipelineResult<F> res;
    res.local_smith = local_smith_of_schur(path, pair);
    if (res.local_smith.kappa.empty()) return res;
    res.linearization = build_linearization(res.local_smith);
    res.intersection = intersection_index_pencil(res.linearization->L, pair.center);
    res.index = res.intersection->index;
    return res;
}

}  // namespace algmult
