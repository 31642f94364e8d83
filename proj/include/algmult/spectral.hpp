#pragma once

// Generalized spectrum, kernels and ranges, projection pairs, and the
// algebraic multiplicity χ[𝔏, λ₀] via the order of the determinant.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algmult/random.hpp"
#include "algmult/ratmat.hpp"
#include "algmult/roots.hpp"

namespace algmult {

/// A square matrix polynomial 𝔏(λ) of size n ≥ 1.
template <ExactField F>
class Path {
public:
    Path(MatPoly<F> matrix, std::string label = {}) : matrix_(std::move(matrix)), label_(std::move(label)) {
        if (!matrix_.is_square() || matrix_.rows() == 0) throw InvalidInput("path must be square with n >= 1");
    }
    static Path from_constant(const ConstMat<F>& c) { return Path(to_matpoly(c)); }

    const MatPoly<F>& matrix() const { return matrix_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return matrix_.rows(); }
    int degree() const { return std::max(max_degree(matrix_), 0); }
    const char* field_tag() const { return F::tag; }

    ConstMat<F> at(const F& lambda) const { return eval(matrix_, lambda); }
    const Poly<F>& determinant() const {
        if (!det_) det_ = det(matrix_);
        return *det_;
    }
    /// det 𝔏 ≡ 0.
    bool degenerate() const { return determinant().is_zero(); }

private:
    MatPoly<F> matrix_;
    std::string label_;
    mutable std::optional<Poly<F>> det_;
};

/// Projections P onto N[𝔏(λ₀)] and Q onto R[𝔏(λ₀)], with the adapted bases
///   U = complement ⊕ kernel,   V = range ⊕ complement.
template <ExactField F>
struct ProjectionPair {
    F center;
    ConstMat<F> P, Q;
    ConstMat<F> kernel;        ///< n×k basis of N[𝔏(λ₀)]
    ConstMat<F> kernel_compl;  ///< n×r basis of (I−P)(U)
    ConstMat<F> range;         ///< n×r basis of R[𝔏(λ₀)]
    ConstMat<F> range_compl;   ///< n×k basis of (I−Q)(V)
    ConstMat<F> basis_u, basis_u_inv;  ///< [kernel_compl | kernel]
    ConstMat<F> basis_v, basis_v_inv;  ///< [range | range_compl]

    std::size_t n() const { return P.rows(); }
    std::size_t kernel_dim() const { return kernel.cols(); }
    std::size_t rank() const { return range.cols(); }

    /// Coordinates of 𝔏 in the adapted bases: B_V⁻¹ 𝔏 B_U.
    MatPoly<F> adapted(const MatPoly<F>& a) const { return basis_v_inv * a * basis_u; }
    ConstMat<F> adapted(const ConstMat<F>& a) const { return basis_v_inv * a * basis_u; }
    /// Inverse of `adapted`: B_V M B_U⁻¹.
    MatPoly<F> ambient(const MatPoly<F>& m) const { return basis_v * m * basis_u_inv; }
    RatMat<F> ambient(const RatMat<F>& m) const { return to_ratmat(basis_v) * m * to_ratmat(basis_u_inv); }
};

namespace detail {

template <ExactField F>
ProjectionPair<F> assemble_pair(const F& center, ConstMat<F> ker, ConstMat<F> ker_c, ConstMat<F> ran,
                                ConstMat<F> ran_c) {
    ProjectionPair<F> pp;
    pp.center = center;
    const std::size_t n = ker.rows();
    const std::size_t k = ker.cols(), r = ran.cols();
    pp.basis_u = hstack(ker_c, ker);
    pp.basis_v = hstack(ran, ran_c);
    pp.basis_u_inv = inverse(pp.basis_u);
    pp.basis_v_inv = inverse(pp.basis_v);
    ConstMat<F> sel_ker(n, n), sel_ran(n, n);
    for (std::size_t i = 0; i < k; ++i) sel_ker(r + i, r + i) = F(1);
    for (std::size_t i = 0; i < r; ++i) sel_ran(i, i) = F(1);
    pp.P = pp.basis_u * sel_ker * pp.basis_u_inv;
    pp.Q = pp.basis_v * sel_ran * pp.basis_v_inv;
    pp.kernel = std::move(ker);
    pp.kernel_compl = std::move(ker_c);
    pp.range = std::move(ran);
    pp.range_compl = std::move(ran_c);
    return pp;
}

/// Columns of `basis` recombined by a random unit upper-triangular matrix.
template <ExactField F>
ConstMat<F> remix(const ConstMat<F>& basis, Rng& rng) {
    const std::size_t k = basis.cols();
    ConstMat<F> t = ConstMat<F>::identity(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) t(i, j) = random_scalar<F>(rng, 2);
    return basis * t;
}

}  // namespace detail

/// Throws InvalidInput unless `pp` is a valid pair of 𝔏(λ₀)-projections.
template <ExactField F>
void validate_pair(const ConstMat<F>& at_center, const ProjectionPair<F>& pp) {
    const std::size_t n = at_center.rows();
    if (pp.P.rows() != n || pp.Q.rows() != n) throw InvalidInput("projection pair has wrong size");
    if (!(pp.P * pp.P == pp.P) || !(pp.Q * pp.Q == pp.Q)) throw InvalidInput("projection pair is not idempotent");
    if (pp.kernel_dim() + pp.rank() != n) throw InvalidInput("projection pair violates rank(P) + rank(Q) = n");
    if (rank(pp.P) != pp.kernel_dim() || rank(pp.Q) != pp.rank()) throw InvalidInput("projection ranks disagree");
    if (!(at_center * pp.P).is_zero()) throw InvalidInput("range(P) is not inside the kernel");
    if (rank(at_center) != pp.rank()) throw InvalidInput("rank(Q) differs from rank of 𝔏(λ₀)");
    // range(𝔏(λ₀)) ⊂ range(Q) ⟺ Q·𝔏(λ₀) = 𝔏(λ₀).
    if (!(pp.Q * at_center == at_center)) throw InvalidInput("range(Q) is not the range of 𝔏(λ₀)");
}

/// Canonical pair (no seed) or a random valid pair determined by `seed`.
template <ExactField F>
ProjectionPair<F> projection_pair(const Path<F>& path, const F& center, std::optional<std::uint64_t> seed = {}) {
    const ConstMat<F> a0 = path.at(center);
    const std::size_t n = path.size();
    ConstMat<F> ker = kernel_basis(a0);
    ConstMat<F> ran = reduced_range_basis(a0);
    ConstMat<F> ker_c = complement_basis(ker, n);
    ConstMat<F> ran_c = complement_basis(ran, n);
    if (seed) {
        Rng rng(*seed);
        ker = detail::remix(ker, rng);
        ran = detail::remix(ran, rng);
        // Shear the complements by random elements of the subspace they complement.
        ConstMat<F> s1(ker.cols(), ker_c.cols()), s2(ran.cols(), ran_c.cols());
        for (std::size_t i = 0; i < s1.rows(); ++i)
            for (std::size_t j = 0; j < s1.cols(); ++j) s1(i, j) = random_scalar<F>(rng, 2);
        for (std::size_t i = 0; i < s2.rows(); ++i)
            for (std::size_t j = 0; j < s2.cols(); ++j) s2(i, j) = random_scalar<F>(rng, 2);
        if (ker.cols() && ker_c.cols()) ker_c = detail::remix(ker_c + ker * s1, rng);
        if (ran.cols() && ran_c.cols()) ran_c = detail::remix(ran_c + ran * s2, rng);
    }
    auto pp = detail::assemble_pair(center, std::move(ker), std::move(ker_c), std::move(ran), std::move(ran_c));
    validate_pair(a0, pp);
    return pp;
}

/// The blocks L₁₁ = Q𝔏(I−P), L₁₂ = Q𝔏P, L₂₁ = (I−Q)𝔏(I−P), L₂₂ = (I−Q)𝔏P in adapted coordinates.
template <ExactField F>
struct BlockSplit {
    MatPoly<F> L11, L12, L21, L22;
};

template <ExactField F>
BlockSplit<F> block_split(const Path<F>& path, const ProjectionPair<F>& pp) {
    const MatPoly<F> m = pp.adapted(path.matrix());
    const std::size_t r = pp.rank(), k = pp.kernel_dim();
    BlockSplit<F> b{m.block(0, 0, r, r), m.block(0, r, r, k), m.block(r, 0, k, r), m.block(r, r, k, k)};
    ALGMULT_ENSURE(!determinant(eval(b.L11, pp.center)).is_zero(), "L11 is singular at the center");
    return b;
}

/// χ[𝔏, λ₀] = ord_{λ₀} det 𝔏(λ); ∞ when det ≡ 0.
template <ExactField F>
ExtendedNat chi_via_det(const Path<F>& path, const F& center) {
    return ord_at(path.determinant(), center);
}

namespace detail {

template <ExactField F>
void reject_degenerate(const Path<F>& path) {
    if (path.degenerate()) throw DegeneratePath();
}

}  // namespace detail

/// Minimal κ with ‖𝔏⁻¹(λ)‖ = O(|λ−λ₀|^{−κ}): the largest pole order among the entries of 𝔏⁻¹.
template <ExactField F>
std::int64_t algebraic_order(const Path<F>& path, const F& center) {
    detail::reject_degenerate(path);
    if (!determinant(path.at(center)).is_zero()) return 0;
    const RatMat<F> inv = inverse(path.matrix());
    std::int64_t kappa = 0;
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j)
            if (!inv(i, j).is_zero()) kappa = std::max(kappa, pole_order(inv(i, j), center));
    return kappa;
}

template <ExactField F>
struct TransversalityStep {
    std::size_t j = 0;
    ConstMat<F> nested_kernel;  ///< basis of C_{j−1} = ∩_{i<j} N[𝔏_i]
    ConstMat<F> image;          ///< basis of 𝔏_j(C_{j−1})
    std::size_t image_dim = 0;
};

template <ExactField F>
struct TransversalityReport {
    F center;
    /// κ of the first transversal order, if any.
    std::optional<std::size_t> kappa;
    std::size_t range_dim = 0;  ///< dim R[𝔏₀]
    std::vector<TransversalityStep<F>> steps;
    std::optional<std::int64_t> chi;
    bool vacuous = false;  ///< 𝔏(λ₀) invertible

    bool transversal() const { return kappa.has_value(); }
};

/// Tests ⊕_{j=1}^{κ} 𝔏_j(C_{j−1}) ⊕ R[𝔏₀] = V with 𝔏_κ(C_{κ−1}) ≠ {0}, for κ = 1..deg 𝔏.
template <ExactField F>
TransversalityReport<F> transversality(const Path<F>& path, const F& center) {
    detail::reject_degenerate(path);
    TransversalityReport<F> rep;
    rep.center = center;
    const std::size_t n = path.size();
    const auto taylor = taylor_coefficients(path.matrix(), center);
    const ConstMat<F> range0 = range_basis(taylor[0]);
    rep.range_dim = range0.cols();
    if (rep.range_dim == n) {
        rep.vacuous = true;
        rep.chi = 0;
        return rep;
    }
    ConstMat<F> nested = kernel_basis(taylor[0]);
    ConstMat<F> span = range0;  // R[𝔏₀] ⊕ images so far
    std::size_t dim_sum = rep.range_dim;
    bool direct = true;
    std::int64_t chi = 0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(path.degree()); ++j) {
        TransversalityStep<F> st;
        st.j = j;
        st.nested_kernel = nested;
        const ConstMat<F> lj = taylor[j];
        st.image = nested.cols() ? range_basis(ConstMat<F>(lj * nested)) : ConstMat<F>(n, 0);
        st.image_dim = st.image.cols();
        span = hstack(span, st.image);
        dim_sum += st.image_dim;
        direct = direct && rank(span) == dim_sum;
        chi += static_cast<std::int64_t>(j * st.image_dim);
        rep.steps.push_back(st);
        if (direct && dim_sum == n && st.image_dim > 0) {
            rep.kappa = j;
            rep.chi = chi;
            return rep;
        }
        if (!direct) break;
        if (nested.cols() == 0) break;
        // C_j = C_{j−1} ∩ N[𝔏_j].
        nested = nested * kernel_basis(ConstMat<F>(lj * nested));
        if (nested.cols() == 0) break;
    }
    return rep;
}

/// Product formula: χ[𝔏𝔐] = χ[𝔏] + χ[𝔐].
template <ExactField F>
bool check_product_formula(const Path<F>& l, const Path<F>& m, const F& center) {
    if (l.size() != m.size()) throw InvalidInput("product formula: sizes differ");
    Path<F> prod(l.matrix() * m.matrix());
    return chi_via_det(prod, center) == chi_via_det(l, center) + chi_via_det(m, center);
}

template <ExactField F>
bool check_direct_sum(const Path<F>& l, const Path<F>& p, const F& center) {
    Path<F> sum(direct_sum(l.matrix(), p.matrix()));
    return chi_via_det(sum, center) == chi_via_det(l, center) + chi_via_det(p, center);
}

template <ExactField F>
struct SpectralPoint {
    F lambda;
    ExtendedNat chi;
};

template <ExactField F>
struct SpectrumReport {
    bool degenerate = false;
    Poly<F> determinant;
    std::vector<SpectralPoint<F>> eigenvalues;
    /// det divided by the field-rational linear factors.
    Poly<F> residual;
};

template <ExactField F>
SpectrumReport<F> generalized_spectrum(const Path<F>& path) {
    SpectrumReport<F> rep;
    rep.determinant = path.determinant();
    if (rep.determinant.is_zero()) {
        rep.degenerate = true;
        return rep;
    }
    Poly<F> rest = rep.determinant;
    for (const F& root : field_roots(rep.determinant)) {
        ExtendedNat chi = ord_at(rep.determinant, root);
        rep.eigenvalues.push_back({root, chi});
        rest = exact_div(rest, power_of_linear(root, static_cast<unsigned>(chi.value())));
    }
    rep.residual = rest;
    return rep;
}

/// (λ−λ₀)Π + I − Π.
template <ExactField F>
Path<F> normalization_path(const ConstMat<F>& projection, const F& center) {
    const std::size_t n = projection.rows();
    MatPoly<F> m = to_matpoly(ConstMat<F>(ConstMat<F>::identity(n) - projection));
    const Poly<F> shift = Poly<F>::linear_factor(center);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += shift * projection(i, j);
    return Path<F>(m, "normalization");
}

}  // namespace algmult
