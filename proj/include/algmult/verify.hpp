#pragma once

// Cross-route verification of planted instances.

#include <cstdint>
#include <string>
#include <vector>

#include "algmult/geometry.hpp"
#include "algmult/planted.hpp"

namespace algmult {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct InstanceReport {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    int degree = 0;
    std::string center;
    std::int64_t expected_chi = 0;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    std::size_t seeded_pairs = 5;
    std::size_t differential_max_size = 4;
    std::size_t differential_max_order = 4;
};

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace detail

/// Runs every route and property on one planted instance. `partner` has the same
/// size and center and is used for the product and direct-sum checks.
template <ExactField F>
InstanceReport verify_instance(const PlantedInstance<F>& inst, const PlantedInstance<F>& partner,
                               std::uint64_t pair_seed, const VerifyOptions& opt = {}) {
    InstanceReport rep;
    rep.n = inst.n;
    rep.center = inst.center.to_string();
    rep.expected_chi = inst.expected_chi();
    auto check = [&](const std::string& name, bool ok, std::string detail = {}) {
        rep.checks.push_back({name, ok, std::move(detail)});
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(name, false, e.what());
        }
    };

    const std::int64_t chi = inst.expected_chi();
    const F& c = inst.center;
    std::optional<Path<F>> path_opt;
    guarded("build", [&] { path_opt.emplace(inst.path()); });
    if (!path_opt) return rep;
    const Path<F>& path = *path_opt;
    rep.degree = path.degree();
    const ExtendedNat chi_det = chi_via_det(path, c);
    check("chi_det", chi_det == ExtendedNat(chi), "got " + chi_det.to_string() + ", planted " + std::to_string(chi));

    const bool singular = determinant(path.at(c)).is_zero();
    check("zero_iff_invertible", (chi == 0) == !singular);

    std::vector<std::optional<std::uint64_t>> seeds{std::nullopt};
    for (std::size_t s = 0; s < opt.seeded_pairs; ++s) seeds.emplace_back(pair_seed + s);
    for (const auto& seed : seeds) {
        const std::string tag = seed ? "[seed " + std::to_string(*seed) + "]" : "[canonical]";
        guarded("routes" + tag, [&] {
            const auto pair = projection_pair(path, c, seed);
            const auto so = schur_operator(path, pair);
            const ExtendedNat cs = chi_via_schur(so);
            check("chi_schur" + tag, cs == ExtendedNat(chi), "got " + cs.to_string());
            const auto lsf = local_smith_of_schur(so);
            check("chi_smith" + tag, lsf.total() == chi, "kappa " + detail::join(lsf.kappa));
            const auto pipe = linearization_pipeline(path, pair);
            check("pipeline_index" + tag, pipe.index == chi, "got " + std::to_string(pipe.index));
            if (so.size() > 0) check("inverse_identity" + tag, schur_inverse_identity(path, pair));
            const auto ld = local_determinant(so);
            check("local_determinant_order" + tag, ExtendedNat(valuation(ld, c)) == chi_det);
            if (!seed) {
                factorization_witness(path, pair);
                if (pipe.linearization) {
                    const auto tm = tangent_multiplicity_check(pipe.linearization->L, c);
                    check("tangent_agreement", tm.agree);
                }
            }
        });
    }

    guarded("partial_multiplicities", [&] {
        const auto lsf = local_partial_multiplicities(path.matrix(), c);
        check("kappa_path", lsf.kappa == inst.expected_kappa(),
              "got " + detail::join(lsf.kappa) + ", planted " + detail::join(inst.expected_kappa()));
        const std::int64_t k1 = lsf.kappa.empty() ? 0 : lsf.kappa.front();
        const std::int64_t order = algebraic_order(path, c);
        check("algebraic_order", order == k1, "got " + std::to_string(order) + ", kappa_1 " + std::to_string(k1));
    });

    guarded("transversality", [&] {
        const auto tr = transversality(path, c);
        if (tr.transversal() || tr.vacuous) check("transversal_chi", tr.chi && *tr.chi == chi);
    });

    guarded("axioms", [&] {
        const Path<F> other = partner.path();
        check("product_formula", check_product_formula(path, other, c));
        check("direct_sum", check_direct_sum(path, other, c));
    });

    if (inst.n <= opt.differential_max_size) {
        guarded("differential_identity", [&] {
            // T = λ₀I − 𝔏(λ₀), so that λ₀I − T = 𝔏(λ₀).
            const ConstMat<F> l0 = path.at(c);
            const ConstMat<F> t = scale(c, ConstMat<F>::identity(inst.n)) - l0;
            bool ok = true;
            for (std::size_t r = 1; r <= opt.differential_max_order; ++r) ok = ok && det_differential_sum(l0, r) == det_derivative(t, c, r);
            check("differential_identity", ok);
        });
    }
    return rep;
}

struct VerifySummary {
    std::uint64_t seed = 0;
    std::size_t count = 0, passed = 0;
    std::vector<InstanceReport> instances;
    /// Failing instances after operation minimization, with their index.
    std::vector<std::pair<std::size_t, PlantedInstance<Rational>>> reproducers;
};

/// Planted instances for a master seed: a deterministic stream of per-instance seeds.
struct InstanceStream {
    Rng master;
    PlantedLimits limits;
    std::size_t size = 0;
    int degree = 0;

    explicit InstanceStream(std::uint64_t seed, std::size_t size_ = 0, int degree_ = 0)
        : master(seed), size(size_), degree(degree_) {}

    struct Item {
        std::uint64_t seed;
        PlantedInstance<Rational> inst, partner;
    };

    Item next() {
        Item it;
        it.seed = master.derive_seed();
        Rng rng(it.seed);
        it.inst = random_planted<Rational>(rng, limits, size, degree);
        it.partner = random_planted<Rational>(rng, limits, it.inst.n, degree, it.inst.center);
        return it;
    }
};

inline VerifySummary run_verify(std::uint64_t seed, std::size_t count, std::size_t size = 0, int degree = 0,
                                const VerifyOptions& opt = {}) {
    VerifySummary sum;
    sum.seed = seed;
    sum.count = count;
    InstanceStream stream(seed, size, degree);
    for (std::size_t i = 0; i < count; ++i) {
        auto item = stream.next();
        InstanceReport rep = verify_instance(item.inst, item.partner, item.seed, opt);
        rep.index = i;
        rep.seed = item.seed;
        if (rep.pass()) {
            ++sum.passed;
        } else {
            auto fails = [&](const PlantedInstance<Rational>& t) {
                return !verify_instance(t, item.partner, item.seed, opt).pass();
            };
            sum.reproducers.emplace_back(i, minimize_planted<Rational>(item.inst, fails));
        }
        sum.instances.push_back(std::move(rep));
    }
    return sum;
}

}  // namespace algmult
