#pragma once

// Lyapunov–Schmidt reduction of 𝔉(λ,u) = 𝔏(λ)u + 𝔑(λ,u) = 0 in double precision.
//
// Coordinates follow the adapted bases of a ProjectionPair: u = B_U [y; x] with
// y the complement part and x the kernel part. The Q-equation is solved for
// y = 𝒴(λ,x) by Newton's method; the remaining rows form the bifurcation map.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "algmult/schur.hpp"

namespace algmult {

/// coeff · λ^lambda_power · Π u_i^{u_powers[i]} in component `row`.
struct MonomialTerm {
    Rational coeff;
    unsigned lambda_power = 0;
    std::vector<unsigned> u_powers;
    std::size_t row = 0;

    unsigned u_degree() const {
        unsigned d = 0;
        for (auto p : u_powers) d += p;
        return d;
    }
};

struct LSConfig {
    double newton_tol = 1e-12;
    int max_newton_iterations = 50;
    double fd_step = 1e-6;
    double delta = 1e-2;
    double sample_radius = 1e-3;

    void validate() const {
        if (!(newton_tol > 0 && max_newton_iterations > 0 && fd_step > 0 && delta > 0 && sample_radius > 0))
            throw InvalidInput("bifurcation configuration values must be strictly positive");
    }
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const ConstMat<Rational>& m) {
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
    return r;
}

inline double eval_double(const Poly<Rational>& p, double x) {
    double acc = 0;
    for (int k = p.degree(); k >= 0; --k) acc = acc * x + p.coeff(k).to_double();
    return acc;
}

inline Eigen::MatrixXd eval_double(const RatMat<Rational>& m, double x) {
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                eval_double(m(i, j).num(), x) / eval_double(m(i, j).den(), x);
    return r;
}

inline double det_or_one(const Eigen::MatrixXd& m) { return m.size() == 0 ? 1.0 : m.determinant(); }

inline int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace detail

/// A real path with a polynomial nonlinearity of u-degree ≥ 2 in every term.
class NonlinearProblem {
public:
    NonlinearProblem(Path<Rational> path, std::vector<MonomialTerm> terms, Rational center, std::string label = {})
        : path_(std::move(path)), terms_(std::move(terms)), center_(std::move(center)), label_(std::move(label)) {
        const std::size_t n = path_.size();
        for (const auto& t : terms_) {
            if (t.u_powers.size() != n) throw InvalidInput("nonlinearity term has wrong number of u exponents");
            if (t.row >= n) throw InvalidInput("nonlinearity term row out of range");
            if (t.u_degree() < 2) throw InvalidInput("nonlinearity terms must have u-degree at least 2");
        }
        const auto tc = taylor_coefficients(path_.matrix(), Rational(0));
        for (const auto& c : tc.coefficients) coeffs_.push_back(detail::to_eigen(c));
    }

    const Path<Rational>& path() const { return path_; }
    const std::vector<MonomialTerm>& terms() const { return terms_; }
    const Rational& center() const { return center_; }
    double center_double() const { return center_.to_double(); }
    const std::string& label() const { return label_; }
    std::size_t size() const { return path_.size(); }

    Eigen::MatrixXd L(double lambda) const {
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
        for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * lambda + coeffs_[k];
        return r;
    }

    Eigen::VectorXd N(double lambda, const Eigen::VectorXd& u) const {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(u.size());
        for (const auto& t : terms_) {
            double v = t.coeff.to_double() * std::pow(lambda, t.lambda_power);
            for (std::size_t i = 0; i < t.u_powers.size(); ++i)
                v *= std::pow(u(static_cast<Eigen::Index>(i)), t.u_powers[i]);
            r(static_cast<Eigen::Index>(t.row)) += v;
        }
        return r;
    }

    Eigen::MatrixXd DuN(double lambda, const Eigen::VectorXd& u) const {
        const auto n = u.size();
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
        for (const auto& t : terms_) {
            const double base = t.coeff.to_double() * std::pow(lambda, t.lambda_power);
            for (std::size_t j = 0; j < t.u_powers.size(); ++j) {
                if (t.u_powers[j] == 0) continue;
                double v = base * t.u_powers[j] * std::pow(u(static_cast<Eigen::Index>(j)), t.u_powers[j] - 1);
                for (std::size_t i = 0; i < t.u_powers.size(); ++i)
                    if (i != j) v *= std::pow(u(static_cast<Eigen::Index>(i)), t.u_powers[i]);
                r(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(j)) += v;
            }
        }
        return r;
    }

    Eigen::VectorXd F(double lambda, const Eigen::VectorXd& u) const { return L(lambda) * u + N(lambda, u); }
    Eigen::MatrixXd DuF(double lambda, const Eigen::VectorXd& u) const { return L(lambda) + DuN(lambda, u); }

private:
    Path<Rational> path_;
    std::vector<MonomialTerm> terms_;
    Rational center_;
    std::string label_;
    std::vector<Eigen::MatrixXd> coeffs_;
};

/// A projection pair converted to double precision, with its exact Schur data.
struct NumericSplitting {
    ProjectionPair<Rational> exact;
    SchurOperator<Rational> schur;
    RatMat<Rational> inverse_kernel_block;  ///< P𝔏⁻¹(I−Q) in adapted coordinates
    Eigen::MatrixXd BU, BV, BVinv;
    std::size_t r = 0, k = 0;

    NumericSplitting(const NonlinearProblem& prob, const ProjectionPair<Rational>& pair)
        : exact(pair),
          schur(schur_operator(prob.path(), pair)),
          inverse_kernel_block(kernel_block_of_inverse(prob.path(), pair)),
          BU(detail::to_eigen(pair.basis_u)),
          BV(detail::to_eigen(pair.basis_v)),
          BVinv(detail::to_eigen(pair.basis_v_inv)),
          r(pair.rank()),
          k(pair.kernel_dim()) {}

    Eigen::VectorXd assemble(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
        Eigen::VectorXd c(static_cast<Eigen::Index>(r + k));
        c << y, x;
        return BU * c;
    }
};

/// 𝒴(λ,x): Newton on Q-rows starting from the linear predictor −L₁₁⁻¹L₁₂x.
inline Eigen::VectorXd solve_Y(const NonlinearProblem& prob, const NumericSplitting& sp, double lambda,
                               const Eigen::VectorXd& x, const LSConfig& cfg = {}) {
    cfg.validate();
    if (static_cast<std::size_t>(x.size()) != sp.k) throw InvalidInput("kernel coordinate vector has wrong size");
    if (x.size() && x.cwiseAbs().maxCoeff() > cfg.sample_radius * (1 + 1e-12))
        throw InvalidInput("kernel coordinates exceed the sample radius");
    const auto r = static_cast<Eigen::Index>(sp.r);
    if (r == 0) return Eigen::VectorXd(0);
    const Eigen::MatrixXd A = sp.BVinv * prob.L(lambda) * sp.BU;
    const Eigen::MatrixXd L11 = A.topLeftCorner(r, r);
    const Eigen::MatrixXd L12 = A.topRightCorner(r, static_cast<Eigen::Index>(sp.k));
    Eigen::VectorXd y = sp.k ? Eigen::VectorXd(-L11.partialPivLu().solve(L12 * x)) : Eigen::VectorXd::Zero(r);
    auto residual = [&](const Eigen::VectorXd& yy) {
        return Eigen::VectorXd((sp.BVinv * prob.F(lambda, sp.assemble(yy, x))).head(r));
    };
    auto step = [&](Eigen::VectorXd& yy, const Eigen::VectorXd& g) {
        const Eigen::MatrixXd J = (sp.BVinv * prob.DuF(lambda, sp.assemble(yy, x)) * sp.BU).topLeftCorner(r, r);
        yy -= J.partialPivLu().solve(g);
    };
    Eigen::VectorXd g = residual(y);
    for (int it = 0; it < cfg.max_newton_iterations; ++it) {
        if (g.cwiseAbs().maxCoeff() <= cfg.newton_tol) {
            step(y, g);  // one polishing step
            return y;
        }
        step(y, g);
        g = residual(y);
        if (!g.allFinite()) break;
    }
    throw ConvergenceFailure("Newton iteration for the complement equation did not converge",
                             g.allFinite() ? g.cwiseAbs().maxCoeff() : INFINITY);
}

inline Eigen::VectorXd solve_Y(const NonlinearProblem& prob, double lambda, const Eigen::VectorXd& x,
                               const LSConfig& cfg = {}) {
    NumericSplitting sp(prob, projection_pair(prob.path(), prob.center()));
    return solve_Y(prob, sp, lambda, x, cfg);
}

/// Bifurcation map: kernel-complement rows of B_V⁻¹ 𝔉(λ, x + 𝒴(λ,x)).
inline Eigen::VectorXd bifurcation_map(const NonlinearProblem& prob, const NumericSplitting& sp, double lambda,
                                       const Eigen::VectorXd& x, const LSConfig& cfg = {}) {
    const Eigen::VectorXd y = solve_Y(prob, sp, lambda, x, cfg);
    return (sp.BVinv * prob.F(lambda, sp.assemble(y, x))).tail(static_cast<Eigen::Index>(sp.k));
}

struct DxYCheck {
    Eigen::MatrixXd finite_difference, exact;
    double deviation = 0;
};

/// Central differences of 𝒴 at x = 0 against −L₁₁⁻¹(λ)L₁₂(λ).
inline DxYCheck dxY_check(const NonlinearProblem& prob, const NumericSplitting& sp, double lambda,
                          const LSConfig& cfg = {}) {
    const auto r = static_cast<Eigen::Index>(sp.r), k = static_cast<Eigen::Index>(sp.k);
    DxYCheck out;
    out.finite_difference = Eigen::MatrixXd::Zero(r, k);
    out.exact = Eigen::MatrixXd::Zero(r, k);
    if (r == 0 || k == 0) return out;
    const Eigen::MatrixXd A = sp.BVinv * prob.L(lambda) * sp.BU;
    out.exact = -A.topLeftCorner(r, r).partialPivLu().solve(A.topRightCorner(r, k));
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
        e(j) = cfg.fd_step;
        out.finite_difference.col(j) = (solve_Y(prob, sp, lambda, e, cfg) - solve_Y(prob, sp, lambda, -e, cfg)) /
                                       (2 * cfg.fd_step);
    }
    out.deviation = (out.finite_difference - out.exact).cwiseAbs().maxCoeff();
    return out;
}

struct BifurcationOperator {
    Eigen::MatrixXd exact_schur;       ///< route (i): 𝒮 evaluated at λ
    Eigen::MatrixXd finite_difference; ///< route (ii): linearization of the bifurcation map
    double discrepancy = 0;
};

inline BifurcationOperator bifurcation_operator(const NonlinearProblem& prob, const NumericSplitting& sp, double lambda,
                                                const LSConfig& cfg = {}) {
    const auto k = static_cast<Eigen::Index>(sp.k);
    BifurcationOperator out;
    out.exact_schur = detail::eval_double(sp.schur.S, lambda);
    out.finite_difference = Eigen::MatrixXd::Zero(k, k);
    if (k == 0) return out;
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
        e(j) = cfg.fd_step;
        out.finite_difference.col(j) =
            (bifurcation_map(prob, sp, lambda, e, cfg) - bifurcation_map(prob, sp, lambda, -e, cfg)) /
            (2 * cfg.fd_step);
    }
    out.discrepancy = (out.finite_difference - out.exact_schur).cwiseAbs().maxCoeff();
    return out;
}

/// Sign data for one projection pair on both sides of λ₀.
struct PairVerdict {
    std::optional<std::uint64_t> seed;
    double det_B_minus = 0, det_B_plus = 0;        ///< (c) numeric 𝓑
    double det_S_minus = 0, det_S_plus = 0;        ///< (d) exact 𝒮
    double det_inv_minus = 0, det_inv_plus = 0;    ///< (e) P𝔏⁻¹(I−Q)
    bool c = false, d = false, e = false;
    double max_discrepancy = 0;
    double max_dxY_deviation = 0;
};

struct BifurcationVerdict {
    Rational center;
    std::int64_t chi = 0;
    bool odd = false;
    bool sign_change = false;
    std::vector<PairVerdict> pairs;
    bool unanimous = false;
    std::string verdict;
};

namespace detail {

inline bool changes_sign(double a, double b) { return sign_of(a) * sign_of(b) < 0; }

/// No other field eigenvalue may lie within 2δ of λ₀.
inline void check_isolated(const NonlinearProblem& prob, double delta) {
    const Rational d2 = Rational::from_double(2 * delta);
    for (const auto& ev : generalized_spectrum(prob.path()).eigenvalues) {
        if (ev.lambda == prob.center()) continue;
        if ((ev.lambda - prob.center()).abs() <= d2)
            throw InvalidInput("another eigenvalue lies within 2·delta of the center: " + ev.lambda.to_string());
    }
}

}  // namespace detail

/// Pairs used by the verdict: the canonical one and two seeded ones.
inline const std::vector<std::optional<std::uint64_t>>& verdict_pair_seeds() {
    static const std::vector<std::optional<std::uint64_t>> seeds{std::nullopt, 1, 2};
    return seeds;
}

inline BifurcationVerdict nonlinear_eigenvalue_verdict(const NonlinearProblem& prob, const LSConfig& cfg = {}) {
    cfg.validate();
    if (prob.path().degenerate()) throw DegeneratePath();
    BifurcationVerdict v;
    v.center = prob.center();
    const ExtendedNat chi = chi_via_det(prob.path(), prob.center());
    v.chi = chi.value();
    v.odd = v.chi % 2 == 1;
    detail::check_isolated(prob, cfg.delta);
    const double c0 = prob.center_double();
    const double lm = c0 - cfg.delta, lp = c0 + cfg.delta;
    v.unanimous = true;
    for (const auto& seed : verdict_pair_seeds()) {
        NumericSplitting sp(prob, projection_pair(prob.path(), prob.center(), seed));
        PairVerdict pv;
        pv.seed = seed;
        const auto bm = bifurcation_operator(prob, sp, lm, cfg), bp = bifurcation_operator(prob, sp, lp, cfg);
        pv.det_B_minus = detail::det_or_one(bm.finite_difference);
        pv.det_B_plus = detail::det_or_one(bp.finite_difference);
        pv.det_S_minus = detail::det_or_one(bm.exact_schur);
        pv.det_S_plus = detail::det_or_one(bp.exact_schur);
        pv.det_inv_minus = detail::det_or_one(detail::eval_double(sp.inverse_kernel_block, lm));
        pv.det_inv_plus = detail::det_or_one(detail::eval_double(sp.inverse_kernel_block, lp));
        pv.c = detail::changes_sign(pv.det_B_minus, pv.det_B_plus);
        pv.d = detail::changes_sign(pv.det_S_minus, pv.det_S_plus);
        pv.e = detail::changes_sign(pv.det_inv_minus, pv.det_inv_plus);
        pv.max_discrepancy = std::max(bm.discrepancy, bp.discrepancy);
        pv.max_dxY_deviation =
            std::max(dxY_check(prob, sp, lm, cfg).deviation, dxY_check(prob, sp, lp, cfg).deviation);
        if (!(pv.c == v.odd && pv.d == v.odd && pv.e == v.odd)) v.unanimous = false;
        v.pairs.push_back(pv);
    }
    v.sign_change = v.pairs.front().c;
    ALGMULT_ENSURE(v.unanimous, "sign-change criteria disagree with the parity of the multiplicity");
    v.verdict = v.odd ? "nonlinear eigenvalue" : "not a nonlinear eigenvalue";
    return v;
}

struct BranchPoint {
    double lambda = 0;
    Eigen::VectorXd u;
    double residual = 0;
};

/// Nontrivial solutions of 𝔉(λ,u) = 0 found by Newton from small seeds along the kernel.
inline std::vector<BranchPoint> branch_probe(const NonlinearProblem& prob, double lambda, const LSConfig& cfg = {},
                                             double max_norm = 1.0) {
    cfg.validate();
    std::vector<BranchPoint> found;
    const auto pair = projection_pair(prob.path(), prob.center());
    const Eigen::MatrixXd K = detail::to_eigen(pair.kernel);
    const auto n = static_cast<Eigen::Index>(prob.size());
    static const double amplitudes[] = {0.01, 0.03, 0.1, 0.3, 1.0};
    std::vector<Eigen::VectorXd> seeds;
    for (Eigen::Index j = 0; j < K.cols(); ++j)
        for (double a : amplitudes)
            for (double s : {1.0, -1.0}) seeds.emplace_back(s * a * K.col(j).normalized());
    if (K.cols() > 1)
        for (double a : amplitudes)
            for (double s : {1.0, -1.0}) seeds.emplace_back(s * a * K.rowwise().sum().normalized());
    for (const auto& seed : seeds) {
        Eigen::VectorXd u = seed;
        bool ok = false;
        for (int it = 0; it < cfg.max_newton_iterations; ++it) {
            const Eigen::VectorXd f = prob.F(lambda, u);
            if (!f.allFinite()) break;
            if (f.cwiseAbs().maxCoeff() <= cfg.newton_tol) {
                u -= prob.DuF(lambda, u).fullPivLu().solve(f);
                ok = true;
                break;
            }
            auto lu = prob.DuF(lambda, u).fullPivLu();
            if (!lu.isInvertible()) break;
            u -= lu.solve(f);
        }
        if (!ok || !u.allFinite()) continue;
        if (u.norm() <= 10 * cfg.newton_tol || u.norm() > max_norm) continue;
        bool dup = false;
        for (const auto& b : found) dup = dup || (b.u - u).norm() <= 1e-8 * std::max(1.0, u.norm());
        if (dup) continue;
        found.push_back({lambda, u, prob.F(lambda, u).cwiseAbs().maxCoeff()});
    }
    std::sort(found.begin(), found.end(), [n](const BranchPoint& a, const BranchPoint& b) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (a.u(i) != b.u(i)) return a.u(i) < b.u(i);
        return false;
    });
    return found;
}

}  // namespace algmult
