#pragma once

// The Schur operator 𝒮 = L₂₂ − L₂₁L₁₁⁻¹L₁₂, the local determinant
// det(L₁₁)·det(𝒮), and block factorization witnesses.
//
// All blocks live in the adapted bases of a ProjectionPair, so 𝒮 is a
// k×k matrix with k = dim N[𝔏(λ₀)].

#include <vector>

#include "algmult/spectral.hpp"

namespace algmult {

template <ExactField F>
struct SchurOperator {
    F center;
    ProjectionPair<F> pair;
    RatMat<F> S;
    /// Field roots of det L₁₁; 𝒮 is defined away from these points.
    std::vector<F> bad_points;
    Poly<F> det_l11;
    /// S = numerator / det L₁₁ with numerator = det(L₁₁)L₂₂ − L₂₁ adj(L₁₁) L₁₂.
    MatPoly<F> numerator;

    std::size_t size() const { return S.rows(); }
    bool regular_at(const F& lambda) const { return !det_l11.eval(lambda).is_zero(); }
};

template <ExactField F>
SchurOperator<F> schur_operator(const Path<F>& path, const ProjectionPair<F>& pair) {
    validate_pair(path.at(pair.center), pair);
    const BlockSplit<F> b = block_split(path, pair);
    SchurOperator<F> so;
    so.center = pair.center;
    so.pair = pair;
    const std::size_t k = pair.kernel_dim();
    so.det_l11 = det(b.L11);
    if (k == 0) {
        so.S = RatMat<F>(0, 0);
        so.numerator = MatPoly<F>(0, 0);
        so.bad_points = field_roots(so.det_l11);
        return so;
    }
    // Fraction-free: 𝒮 = (d·L₂₂ − L₂₁·adj(L₁₁)·L₁₂) / d.
    MatPoly<F> num = b.L22;
    if (pair.rank() > 0) {
        num = scale(so.det_l11, b.L22) - b.L21 * adjugate(b.L11) * b.L12;
    }
    so.numerator = num;
    so.S = num.template map<RationalFunction<F>>([&](const Poly<F>& p) { return RationalFunction<F>(p, so.det_l11); });
    so.bad_points = field_roots(so.det_l11);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            ALGMULT_ENSURE(so.S(i, j).regular_at(so.center), "Schur operator has a pole at the center");
            ALGMULT_ENSURE(so.S(i, j).eval(so.center).is_zero(), "Schur operator does not vanish at the center");
        }
    return so;
}

/// det(L₁₁(λ))·det(𝒮(λ)) in the adapted bases.
template <ExactField F>
RationalFunction<F> local_determinant(const SchurOperator<F>& so) {
    const std::size_t k = so.size();
    if (k == 0) return RationalFunction<F>(so.det_l11);
    // det(num/d) · d = det(num) / d^{k−1}.
    return RationalFunction<F>(det(so.numerator), so.det_l11.pow(static_cast<unsigned>(k - 1)));
}

template <ExactField F>
RationalFunction<F> local_determinant(const Path<F>& path, const ProjectionPair<F>& pair) {
    return local_determinant(schur_operator(path, pair));
}

/// 𝔏(λ) invertible ⟺ local determinant nonzero at λ, for λ where 𝒮 is defined.
template <ExactField F>
bool invertibility_via_localdet(const SchurOperator<F>& so, const F& lambda) {
    if (!so.regular_at(lambda)) throw InvalidInput("point lies outside the regularity region of the Schur operator");
    return !local_determinant(so).eval(lambda).is_zero();
}

template <ExactField F>
bool invertibility_via_localdet(const Path<F>& path, const ProjectionPair<F>& pair, const F& lambda) {
    return invertibility_via_localdet(schur_operator(path, pair), lambda);
}

/// Ã = 𝔏₁ · (L₁₁ ⊕ 𝒮) · 𝔏₂ in adapted coordinates, with
/// 𝔏₁ = [[I, 0], [L₂₁L₁₁⁻¹, I]] and 𝔏₂ = [[I, L₁₁⁻¹L₁₂], [0, I]].
template <ExactField F>
struct FactorizationWitness {
    RatMat<F> left, middle, right;
    /// B_V·𝔏₁ and 𝔏₂·B_U⁻¹, so that 𝔏 = ambient_left · middle · ambient_right.
    RatMat<F> ambient_left, ambient_right;
};

template <ExactField F>
FactorizationWitness<F> factorization_witness(const Path<F>& path, const ProjectionPair<F>& pair) {
    const SchurOperator<F> so = schur_operator(path, pair);
    const BlockSplit<F> b = block_split(path, pair);
    const std::size_t r = pair.rank(), k = pair.kernel_dim(), n = r + k;
    const RatMat<F> l11_inv = r ? inverse(b.L11) : RatMat<F>(0, 0);
    FactorizationWitness<F> w;
    w.left = RatMat<F>::identity(n);
    w.right = RatMat<F>::identity(n);
    if (r && k) {
        w.left.set_block(r, 0, to_ratmat(b.L21) * l11_inv);
        w.right.set_block(0, r, l11_inv * to_ratmat(b.L12));
    }
    w.middle = direct_sum(to_ratmat(b.L11), so.S);
    ALGMULT_ENSURE(w.left * w.middle * w.right == to_ratmat(pair.adapted(path.matrix())),
                   "block factorization does not reproduce the path");
    ALGMULT_ENSURE(det(w.left) == RationalFunction<F>(1) && det(w.right) == RationalFunction<F>(1),
                   "factorization witnesses are not unimodular");
    w.ambient_left = to_ratmat(pair.basis_v) * w.left;
    w.ambient_right = w.right * to_ratmat(pair.basis_u_inv);
    ALGMULT_ENSURE(w.ambient_left * w.middle * w.ambient_right == to_ratmat(path.matrix()),
                   "ambient factorization does not reproduce the path");
    return w;
}

/// The kernel/complement block P𝔏⁻¹(I−Q) in adapted coordinates: the bottom-right
/// k×k block of B_U⁻¹ 𝔏⁻¹ B_V.
template <ExactField F>
RatMat<F> kernel_block_of_inverse(const Path<F>& path, const ProjectionPair<F>& pair) {
    detail::reject_degenerate(path);
    const RatMat<F> inv = to_ratmat(pair.basis_u_inv) * inverse(path.matrix()) * to_ratmat(pair.basis_v);
    const std::size_t r = pair.rank(), k = pair.kernel_dim();
    return inv.block(r, r, k, k);
}

/// 𝒮⁻¹ = P𝔏⁻¹(I−Q) as an exact identity of rational matrices.
template <ExactField F>
bool schur_inverse_identity(const Path<F>& path, const ProjectionPair<F>& pair) {
    detail::reject_degenerate(path);
    const SchurOperator<F> so = schur_operator(path, pair);
    if (so.size() == 0) return true;
    return inverse(so.S) == kernel_block_of_inverse(path, pair);
}

/// χ as ord_{λ₀} det 𝒮.
template <ExactField F>
ExtendedNat chi_via_schur(const SchurOperator<F>& so) {
    if (so.size() == 0) return ExtendedNat(0);
    // det L₁₁ is a unit at the center, so ord det 𝒮 = ord det(numerator).
    const Poly<F> d = det(so.numerator);
    if (d.is_zero()) throw DegeneratePath();
    return ord_at(d, so.center);
}

template <ExactField F>
ExtendedNat chi_via_schur(const Path<F>& path, const ProjectionPair<F>& pair) {
    detail::reject_degenerate(path);
    return chi_via_schur(schur_operator(path, pair));
}

}  // namespace algmult
