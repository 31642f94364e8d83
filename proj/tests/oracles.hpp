#pragma once

// Slow, obviously-correct reference computations used as test oracles.

#include <algorithm>
#include <numeric>
#include <vector>

#include "algmult/ratmat.hpp"

namespace oracle {

using namespace algmult;

inline int permutation_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

/// Leibniz formula over all permutations; works for any commutative ring entry type.
template <class T>
T leibniz_det(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    T total(0);
    do {
        T term(permutation_sign(p));
        for (std::size_t i = 0; i < n; ++i) term = term * a(i, p[i]);
        total = total + term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

/// Laplace expansion along the first row.
template <class T>
T cofactor_det(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (n == 0) return T(1);
    if (n == 1) return a(0, 0);
    T total(0);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<T> m(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, mc = 0; c < n; ++c)
                if (c != j) m(i - 1, mc++) = a(i, c);
        T t = a(0, j) * cofactor_det(m);
        total = (j % 2 == 0) ? total + t : total - t;
    }
    return total;
}

/// Multiplicity of a root by repeated evaluation of derivatives.
template <ExactField F>
std::int64_t root_multiplicity(Poly<F> p, const F& at) {
    std::int64_t k = 0;
    while (!p.is_zero() && p.eval(at).is_zero()) {
        p = p.derivative();
        ++k;
    }
    return k;
}

template <ExactField F>
ConstMat<F> jordan(std::size_t size, const F& ev) {
    ConstMat<F> j(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        j(i, i) = ev;
        if (i + 1 < size) j(i, i + 1) = F(1);
    }
    return j;
}

/// λ·I as a path entry helper: diag(p_1, …, p_n).
template <ExactField F>
MatPoly<F> diag(const std::vector<Poly<F>>& d) {
    return MatPoly<F>::diagonal(d);
}

inline Poly<Rational> lam() { return Poly<Rational>::x(); }

}  // namespace oracle
