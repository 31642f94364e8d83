#pragma once

// Exact linear algebra on constant matrices over Q or Q(i).
// Bases are returned as the columns of a matrix.

#include <optional>
#include <vector>

#include "algmult/matrix.hpp"
#include "algmult/scalar.hpp"

namespace algmult {

template <ExactField F>
using ConstMat = Matrix<F>;

template <ExactField F>
struct RowEchelon {
    ConstMat<F> reduced;               ///< reduced row echelon form
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

template <ExactField F>
RowEchelon<F> rref(ConstMat<F> a) {
    RowEchelon<F> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col).is_zero()) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, row);
        const F inv = F(1) / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            const F f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(a);
    return out;
}

template <ExactField F>
std::size_t rank(const ConstMat<F>& a) {
    return rref(a).pivots.size();
}

/// Null-space basis: one vector per free column of the row echelon form.
template <ExactField F>
ConstMat<F> kernel_basis(const ConstMat<F>& a) {
    const auto e = rref(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
    ConstMat<F> basis(n, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = F(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
    }
    return basis;
}

/// Column-space basis: the pivot columns of a.
template <ExactField F>
ConstMat<F> range_basis(const ConstMat<F>& a) {
    const auto e = rref(a);
    ConstMat<F> basis(a.rows(), e.pivots.size());
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) basis(i, k) = a(i, e.pivots[k]);
    return basis;
}

/// Column-space basis in reduced column echelon form (unit entries at pivot rows).
template <ExactField F>
ConstMat<F> reduced_range_basis(const ConstMat<F>& a) {
    const auto e = rref(a.transpose());
    ConstMat<F> basis(a.rows(), e.pivots.size());
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) basis(i, k) = e.reduced(k, i);
    return basis;
}

/// Standard basis vectors spanning a complement of the column span of `basis`
/// (the coordinates that are not pivots of basisᵀ).
template <ExactField F>
ConstMat<F> complement_basis(const ConstMat<F>& basis, std::size_t n) {
    std::vector<bool> is_pivot(n, false);
    if (basis.cols() > 0)
        for (auto p : rref(basis.transpose()).pivots) is_pivot[p] = true;
    std::vector<std::size_t> picks;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) picks.push_back(j);
    ConstMat<F> c(n, picks.size());
    for (std::size_t k = 0; k < picks.size(); ++k) c(picks[k], k) = F(1);
    return c;
}

template <ExactField F>
F determinant(ConstMat<F> a) {
    if (!a.is_square()) throw InvalidInput("determinant of non-square matrix");
    F det(1);
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return F(0);
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        const F inv = F(1) / a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            const F f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Inverse by Gauss–Jordan; std::nullopt when singular.
template <ExactField F>
std::optional<ConstMat<F>> try_inverse(const ConstMat<F>& a) {
    if (!a.is_square()) throw InvalidInput("inverse of non-square matrix");
    const std::size_t n = a.rows();
    auto e = rref(hstack(a, ConstMat<F>::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

template <ExactField F>
ConstMat<F> inverse(const ConstMat<F>& a) {
    auto inv = try_inverse(a);
    if (!inv) throw InvalidInput("inverse of singular constant matrix");
    return *inv;
}

}  // namespace algmult
