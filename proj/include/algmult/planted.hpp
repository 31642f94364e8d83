#pragma once

// Random instances with known multiplicities.
//
// A planted path is E(λ)·diag((λ−λ₀)^{kᵢ}·gᵢ(λ))·F(λ) where gᵢ(λ₀) ≠ 0 and E, F
// are products of elementary polynomial row/column operations. Its χ at λ₀ is
// Σkᵢ and its partial multiplicities are the positive kᵢ.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

#include "algmult/random.hpp"
#include "algmult/spectral.hpp"

namespace algmult {

struct PlantedLimits {
    std::size_t max_size = 5;
    int max_degree = 4;
    std::int64_t max_total_order = 8;
    std::size_t op_count = 8;
    long coeff_bound = 3;
};

template <ExactField F>
struct ElementaryOp {
    enum class Kind { add, swap, scale };
    bool left = true;  ///< row operation (left factor) or column operation (right factor)
    Kind kind = Kind::add;
    std::size_t i = 0, j = 0;
    Poly<F> multiplier;  ///< for add: row_i += multiplier·row_j
    F factor;            ///< for scale: row_i *= factor
};

template <ExactField F>
void apply_op(MatPoly<F>& m, const ElementaryOp<F>& op) {
    using K = typename ElementaryOp<F>::Kind;
    const std::size_t n = m.rows();
    switch (op.kind) {
        case K::swap:
            if (op.left)
                m.swap_rows(op.i, op.j);
            else
                m.swap_cols(op.i, op.j);
            break;
        case K::scale:
            for (std::size_t t = 0; t < n; ++t) (op.left ? m(op.i, t) : m(t, op.i)) *= op.factor;
            break;
        case K::add:
            for (std::size_t t = 0; t < n; ++t) {
                if (op.left)
                    m(op.i, t) += op.multiplier * m(op.j, t);
                else
                    m(t, op.i) += op.multiplier * m(t, op.j);
            }
            break;
    }
}

template <ExactField F>
struct PlantedInstance {
    std::size_t n = 1;
    F center;
    std::vector<std::int64_t> orders;  ///< kᵢ
    std::vector<Poly<F>> units;        ///< gᵢ with gᵢ(λ₀) ≠ 0
    std::vector<ElementaryOp<F>> ops;

    std::int64_t expected_chi() const {
        std::int64_t s = 0;
        for (auto k : orders) s += k;
        return s;
    }
    std::vector<std::int64_t> expected_kappa() const {
        std::vector<std::int64_t> k;
        for (auto v : orders)
            if (v > 0) k.push_back(v);
        std::sort(k.rbegin(), k.rend());
        return k;
    }
    MatPoly<F> diagonal_part() const {
        MatPoly<F> d(n, n);
        for (std::size_t i = 0; i < n; ++i)
            d(i, i) = power_of_linear(center, static_cast<unsigned>(orders[i])) * units[i];
        return d;
    }
    MatPoly<F> build() const {
        MatPoly<F> m = diagonal_part();
        for (const auto& op : ops) apply_op(m, op);
        return m;
    }
    Path<F> path() const { return Path<F>(build(), "planted"); }
};

/// Random planted instance; ops that would exceed the degree limit are rejected.
template <ExactField F>
PlantedInstance<F> random_planted(Rng& rng, const PlantedLimits& lim, std::size_t size = 0, int degree = 0,
                                  std::type_identity_t<std::optional<F>> center = {}) {
    PlantedInstance<F> inst;
    inst.n = size ? size : static_cast<std::size_t>(rng.uniform(1, static_cast<long>(lim.max_size)));
    const int max_deg = degree ? degree : lim.max_degree;
    inst.center = center ? *center : random_scalar<F>(rng, 2);
    std::int64_t budget = lim.max_total_order;
    for (std::size_t i = 0; i < inst.n; ++i) {
        const long cap = std::min<long>(max_deg, budget);
        std::int64_t k = rng.uniform(0, cap);
        inst.orders.push_back(k);
        budget -= k;
        Poly<F> g(random_scalar<F>(rng, 3));
        if (g.is_zero()) g = Poly<F>(F(1));
        if (k < max_deg && rng.uniform(0, 2) == 0) {
            F root = random_scalar<F>(rng, 3);
            if (root == inst.center) root = root + F(1);
            g *= Poly<F>::linear_factor(root);
        }
        inst.units.push_back(g);
    }
    if (inst.expected_chi() == 0 && rng.uniform(0, 9) != 0) {
        inst.orders[0] = 1;
        // keep the unit factor within the degree limit
        if (inst.units[0].degree() + 1 > max_deg) inst.units[0] = Poly<F>(F(1));
    }

    MatPoly<F> cur = inst.diagonal_part();
    using K = typename ElementaryOp<F>::Kind;
    for (std::size_t t = 0; t < lim.op_count * 4 && inst.ops.size() < lim.op_count; ++t) {
        ElementaryOp<F> op;
        op.left = rng.coin();
        const long kind = inst.n > 1 ? rng.uniform(0, 5) : 5;
        if (kind <= 3) {
            op.kind = K::add;
            op.i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(inst.n) - 1));
            do op.j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(inst.n) - 1));
            while (op.j == op.i);
            std::vector<F> c(static_cast<std::size_t>(rng.uniform(1, 2)));
            for (auto& v : c) v = random_scalar<F>(rng, lim.coeff_bound);
            op.multiplier = Poly<F>(std::move(c));
            if (op.multiplier.is_zero()) continue;
        } else if (kind == 4) {
            op.kind = K::swap;
            op.i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(inst.n) - 1));
            op.j = (op.i + 1) % inst.n;
        } else {
            op.kind = K::scale;
            op.i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(inst.n) - 1));
            op.factor = F(static_cast<long>(rng.nonzero(2)));
        }
        MatPoly<F> next = cur;
        apply_op(next, op);
        if (max_degree(next) > max_deg) continue;
        cur = std::move(next);
        inst.ops.push_back(op);
    }
    return inst;
}

/// Greedily drops operations while `fails` keeps reporting a failure.
template <ExactField F>
PlantedInstance<F> minimize_planted(PlantedInstance<F> inst, const std::function<bool(const PlantedInstance<F>&)>& fails) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < inst.ops.size(); ++i) {
            PlantedInstance<F> trial = inst;
            trial.ops.erase(trial.ops.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(trial)) {
                inst = std::move(trial);
                changed = true;
                break;
            }
        }
    }
    return inst;
}

/// Random integer matrix with determinant ±1 (a product of elementary operations).
template <ExactField F>
ConstMat<F> random_unimodular(Rng& rng, std::size_t n, std::size_t steps = 6) {
    ConstMat<F> s = ConstMat<F>::identity(n);
    if (n < 2) return s;
    for (std::size_t t = 0; t < steps; ++t) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
        if (j >= i) ++j;
        const F c(static_cast<long>(rng.nonzero(2)));
        for (std::size_t k = 0; k < n; ++k) s(i, k) += c * s(j, k);
        if (rng.uniform(0, 3) == 0) s.swap_rows(i, j);
    }
    return s;
}

template <ExactField F>
struct PlantedPencil {
    ConstMat<F> T;
    F center;
    std::vector<std::size_t> blocks_at_center;  ///< Jordan block sizes at λ₀
    std::int64_t expected_chi() const {
        std::int64_t s = 0;
        for (auto b : blocks_at_center) s += static_cast<std::int64_t>(b);
        return s;
    }
};

/// T = S J S⁻¹ where J has Jordan blocks of size ≤ max_block, some of them at λ₀.
template <ExactField F>
PlantedPencil<F> random_jordan_pencil(Rng& rng, std::size_t max_size = 6, std::size_t max_block = 4) {
    PlantedPencil<F> pp;
    pp.center = F(static_cast<long>(rng.uniform(-2, 2)));
    std::vector<std::pair<std::size_t, F>> blocks;
    std::size_t total = 0;
    const auto target = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_size)));
    while (total < target) {
        const auto room = std::min(max_block, target - total);
        const auto b = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(room)));
        const bool at_center = blocks.empty() || rng.coin();
        F ev = pp.center;
        if (!at_center) {
            ev = F(static_cast<long>(rng.uniform(-3, 3)));
            if (ev == pp.center) ev = ev + F(4);
        }
        blocks.emplace_back(b, ev);
        if (at_center) pp.blocks_at_center.push_back(b);
        total += b;
    }
    ConstMat<F> j(total, total);
    std::size_t off = 0;
    for (auto [b, ev] : blocks) {
        for (std::size_t i = 0; i < b; ++i) {
            j(off + i, off + i) = ev;
            if (i + 1 < b) j(off + i, off + i + 1) = F(1);
        }
        off += b;
    }
    const ConstMat<F> s = random_unimodular<F>(rng, total);
    pp.T = s * j * inverse(s);
    return pp;
}

/// Π = u vᵀ / (vᵀu), a random rank-one projection.
template <ExactField F>
ConstMat<F> random_rank_one_projection(Rng& rng, std::size_t n) {
    for (;;) {
        ConstMat<F> u(n, 1), v(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            u(i, 0) = random_scalar<F>(rng, 3);
            v(i, 0) = random_scalar<F>(rng, 3);
        }
        const F d = (v.transpose() * u)(0, 0);
        if (d.is_zero()) continue;
        ConstMat<F> p = u * v.transpose();
        const F inv = F(1) / d;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) *= inv;
        return p;
    }
}

/// Random matrix polynomial with small integer-ish coefficients.
template <ExactField F>
MatPoly<F> random_matpoly(Rng& rng, std::size_t n, int degree, long bound = 3) {
    MatPoly<F> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<F> c(static_cast<std::size_t>(degree) + 1);
            for (auto& v : c) v = random_scalar<F>(rng, bound);
            m(i, j) = Poly<F>(std::move(c));
        }
    return m;
}

template <ExactField F>
ConstMat<F> random_constmat(Rng& rng, std::size_t n, long bound = 3) {
    ConstMat<F> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = F(rng.uniform(-bound, bound));
    return m;
}

}  // namespace algmult
