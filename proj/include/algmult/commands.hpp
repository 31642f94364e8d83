#pragma once

// Command implementations behind the command-line tool. Each command returns
// a JSON document and a process exit code:
//   0 success, 1 input error, 2 degenerate path or infinite χ, 3 internal disagreement.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include "algmult/io.hpp"
#include "algmult/verify.hpp"

namespace algmult {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitDegenerate = 2, kExitDisagree = 3 };

struct CommandResult {
    Json output;
    int exit_code = kExitOk;
};

struct CommandOptions {
    std::optional<std::string> input;
    std::optional<std::string> lambda0;
    std::uint64_t seed = 0;
    std::size_t count = 200;
    std::size_t size = 0;    ///< 0: random in [1, 5]
    int degree = 0;          ///< 0: up to 4
    double delta = 1e-2;
    std::optional<std::size_t> max_order;
    std::string reproducer_dir = ".";
};

namespace detail {

inline std::size_t pair_seed_count() { return 5; }

template <ExactField F>
Json transversality_json(const TransversalityReport<F>& t) {
    Json j;
    j["transversal"] = t.transversal();
    j["vacuous"] = t.vacuous;
    j["kappa"] = t.kappa ? Json(*t.kappa) : Json(nullptr);
    j["chi"] = t.chi ? Json(*t.chi) : Json(nullptr);
    j["range_dim"] = t.range_dim;
    Json steps = Json::array();
    for (const auto& s : t.steps) steps.push_back({{"j", s.j}, {"nested_kernel_dim", s.nested_kernel.cols()}, {"image_dim", s.image_dim}});
    j["steps"] = std::move(steps);
    return j;
}

template <class F>
Json kappa_json(const std::vector<std::int64_t>& k) {
    Json a = Json::array();
    for (auto v : k) a.push_back(v);
    return a;
}

template <ExactField F>
CommandResult chi_impl(const ProblemFile& pf, const CommandOptions& opt) {
    const Path<F> path = path_from_problem<F>(pf);
    const F c = center_from<F>(pf, opt.lambda0);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "chi";
    j["field"] = F::tag;
    j["lambda0"] = to_json(c);
    j["n"] = path.size();
    j["det"] = path.determinant().to_string();
    const ExtendedNat chi = chi_via_det(path, c);
    j["chi_det"] = to_json(chi);
    if (chi.is_infinite()) {
        j["error"] = "Σ(𝔏)=Ω";
        res.exit_code = kExitDegenerate;
        return res;
    }
    const auto canonical = projection_pair(path, c);
    const auto so = schur_operator(path, canonical);
    j["chi_schur"] = to_json(chi_via_schur(so));
    Json pairs = Json::array();
    bool agree = chi_via_schur(so) == chi;
    bool inverse_ok = true;
    for (std::size_t s = 1; s <= pair_seed_count(); ++s) {
        const auto pp = projection_pair(path, c, s);
        const ExtendedNat v = chi_via_schur(path, pp);
        agree = agree && v == chi;
        inverse_ok = inverse_ok && schur_inverse_identity(path, pp);
        pairs.push_back({{"seed", s}, {"chi_schur", to_json(v)}});
    }
    j["chi_schur_pairs"] = std::move(pairs);
    const auto lsf = local_smith_of_schur(so);
    j["kappa"] = kappa_json<F>(lsf.kappa);
    j["sum_kappa"] = lsf.total();
    const auto pipe = linearization_pipeline(path, canonical);
    j["M"] = pipe.linearization ? pipe.linearization->M : 0;
    j["index"] = pipe.index;
    const auto full = local_partial_multiplicities(path.matrix(), c);
    j["kappa_path"] = kappa_json<F>(full.kappa);
    const std::int64_t order = algebraic_order(path, c);
    j["algebraic_order"] = order;
    j["transversality"] = transversality_json(transversality(path, c));
    inverse_ok = inverse_ok && schur_inverse_identity(path, canonical);
    j["inverse_identity"] = inverse_ok;
    const std::int64_t x = chi.value();
    agree = agree && lsf.total() == x && pipe.index == x && full.total() == x && inverse_ok &&
            order == (full.kappa.empty() ? 0 : full.kappa.front());
    j["agree"] = agree;
    if (!agree) res.exit_code = kExitDisagree;
    return res;
}

template <ExactField F>
CommandResult spectrum_impl(const ProblemFile& pf) {
    const Path<F> path = path_from_problem<F>(pf);
    const auto rep = generalized_spectrum(path);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "spectrum";
    j["field"] = F::tag;
    j["degenerate"] = rep.degenerate;
    j["det"] = rep.determinant.to_string();
    Json ev = Json::array();
    for (const auto& e : rep.eigenvalues) ev.push_back({{"lambda", to_json(e.lambda)}, {"chi", to_json(e.chi)}});
    j["eigenvalues"] = std::move(ev);
    if (rep.degenerate) {
        j["error"] = "Σ(𝔏)=Ω";
        res.exit_code = kExitDegenerate;
    } else {
        j["residual"] = rep.residual.to_string();
    }
    return res;
}

template <ExactField F>
CommandResult schur_impl(const ProblemFile& pf, const CommandOptions& opt) {
    const Path<F> path = path_from_problem<F>(pf);
    const F c = center_from<F>(pf, opt.lambda0);
    if (path.degenerate()) throw DegeneratePath();
    const auto pair = projection_pair(path, c);
    const auto so = schur_operator(path, pair);
    const auto w = factorization_witness(path, pair);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "schur";
    j["field"] = F::tag;
    j["lambda0"] = to_json(c);
    j["kernel_dim"] = pair.kernel_dim();
    j["P"] = to_json(pair.P);
    j["Q"] = to_json(pair.Q);
    j["S"] = to_json(so.S);
    j["det_L11"] = so.det_l11.to_string();
    Json bad = Json::array();
    for (const auto& b : so.bad_points) bad.push_back(to_json(b));
    j["singular_points"] = std::move(bad);
    j["local_determinant"] = local_determinant(so).to_string();
    j["chi_schur"] = to_json(chi_via_schur(so));
    j["witness"] = {{"left", to_json(w.left)}, {"middle", to_json(w.middle)}, {"right", to_json(w.right)}};
    j["inverse_identity"] = schur_inverse_identity(path, pair);
    if (!j["inverse_identity"].get<bool>()) res.exit_code = kExitDisagree;
    return res;
}

template <ExactField F>
CommandResult smith_impl(const ProblemFile& pf, const CommandOptions& opt) {
    const Path<F> path = path_from_problem<F>(pf);
    const F c = center_from<F>(pf, opt.lambda0);
    if (path.degenerate()) throw DegeneratePath();
    const auto pair = projection_pair(path, c);
    const auto lsf = local_smith_of_schur(path, pair);
    const auto full = local_partial_multiplicities(path.matrix(), c);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "smith";
    j["field"] = F::tag;
    j["lambda0"] = to_json(c);
    Json inv = Json::array();
    for (const auto& d : full.smith.invariant_factors) inv.push_back(d.to_string());
    j["invariant_factors"] = std::move(inv);
    j["kappa_path"] = kappa_json<F>(full.kappa);
    j["kappa"] = kappa_json<F>(lsf.kappa);
    j["sum_kappa"] = lsf.total();
    if (!lsf.kappa.empty()) {
        const auto lin = build_linearization(lsf);
        j["M"] = lin.M;
        j["L"] = to_json(lin.L);
        j["P1"] = to_json(lin.P1);
        j["P2"] = to_json(lin.P2);
    } else {
        j["M"] = 0;
    }
    if (lsf.kappa != full.kappa) res.exit_code = kExitDisagree;
    return res;
}

template <ExactField F>
CommandResult tangent_impl(const ProblemFile& pf, const CommandOptions& opt) {
    const ConstMat<F> t = pencil_from_problem<F>(pf);
    const F c = center_from<F>(pf, opt.lambda0);
    const auto rep = tangent_order(t, c, opt.max_order);
    const auto idx = intersection_index_pencil(t, c);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "tangent";
    j["field"] = F::tag;
    j["lambda0"] = to_json(c);
    j["N"] = t.rows();
    j["m"] = rep.m ? Json(*rep.m) : Json(nullptr);
    Json orders = Json::array();
    for (std::size_t i = 0; i < rep.values.size(); ++i)
        orders.push_back({{"order", i + 1},
                          {"value", to_json(rep.values[i])},
                          {"method", rep.cross_checked[i] ? "derivative-of-det+combinatorial-sum" : "derivative-of-det"},
                          {"combinatorial", rep.cross_checked[i] ? "agree" : "skipped: beyond N ≤ 4, order ≤ 6"},
                          {"line_in_tangent_variety", rep.line_in_tangent[i]}});
    j["orders"] = std::move(orders);
    j["combinatorial_skipped"] = rep.combinatorial_skipped;
    j["differential_identity"] = rep.combinatorial_skipped ? "skipped" : "agree";
    j["intersection_index"] = idx.index;
    j["reduced_generator"] = idx.reduced_generator.to_string("x");
    j["monomial_basis_size"] = idx.monomial_basis_size;
    j["chi_det"] = to_json(chi_via_det(Path<F>(pencil(t)), c));
    if (rep.m && static_cast<std::int64_t>(*rep.m) != idx.index) res.exit_code = kExitDisagree;
    return res;
}

inline Json point_json(const BranchPoint& b) {
    return {{"lambda", b.lambda}, {"u", to_json(b.u)}, {"residual", b.residual}};
}

inline CommandResult bifurcate_impl(const ProblemFile& pf, const CommandOptions& opt) {
    if (pf.field != "Q") throw InvalidInput("bifurcate requires a problem over Q");
    const auto terms = nonlinearity_from_problem(pf);
    const Path<Rational> path = path_from_problem<Rational>(pf);
    const Rational c = center_from<Rational>(pf, opt.lambda0);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "bifurcate";
    j["lambda0"] = to_json(c);
    const ExtendedNat chi = chi_via_det(path, c);
    if (chi.is_infinite()) {
        j["chi"] = "inf";
        j["error"] = "Σ(𝔏)=Ω";
        res.exit_code = kExitDegenerate;
        return res;
    }
    LSConfig cfg;
    cfg.delta = opt.delta;
    const NonlinearProblem prob(path, terms, c, pf.label);
    const auto v = nonlinear_eigenvalue_verdict(prob, cfg);
    j["chi"] = v.chi;
    j["odd"] = v.odd;
    j["sign_change"] = v.sign_change;
    j["verdict"] = v.verdict;
    j["delta"] = cfg.delta;
    Json pairs = Json::array();
    for (const auto& p : v.pairs) {
        pairs.push_back({{"seed", p.seed ? Json(*p.seed) : Json("canonical")},
                         {"det_B", {p.det_B_minus, p.det_B_plus}},
                         {"det_S", {p.det_S_minus, p.det_S_plus}},
                         {"det_P_inv_IQ", {p.det_inv_minus, p.det_inv_plus}},
                         {"criteria", {{"c", p.c}, {"d", p.d}, {"e", p.e}}},
                         {"B_discrepancy", p.max_discrepancy},
                         {"dxY_deviation", p.max_dxY_deviation}});
    }
    j["pairs"] = std::move(pairs);
    j["unanimous"] = v.unanimous;
    const double c0 = c.to_double();
    Json probe;
    for (double lam : {c0 - cfg.delta, c0 + cfg.delta}) {
        Json pts = Json::array();
        for (const auto& b : branch_probe(prob, lam, cfg)) pts.push_back(point_json(b));
        probe.push_back({{"lambda", lam}, {"solutions", std::move(pts)}});
    }
    j["branch_probe"] = std::move(probe);
    return res;
}

inline Json planted_json(const PlantedInstance<Rational>& inst) {
    Json ops = Json::array();
    using K = ElementaryOp<Rational>::Kind;
    for (const auto& op : inst.ops) {
        Json o;
        o["side"] = op.left ? "row" : "column";
        o["kind"] = op.kind == K::add ? "add" : (op.kind == K::swap ? "swap" : "scale");
        o["i"] = op.i;
        if (op.kind != K::scale) o["j"] = op.j;
        if (op.kind == K::add) o["multiplier"] = op.multiplier.to_string();
        if (op.kind == K::scale) o["factor"] = op.factor.to_string();
        ops.push_back(std::move(o));
    }
    Json units = Json::array();
    for (const auto& u : inst.units) units.push_back(u.to_string());
    return {{"orders", kappa_json<Rational>(inst.orders)}, {"units", std::move(units)}, {"ops", std::move(ops)}};
}

}  // namespace detail

inline CommandResult cmd_verify(const CommandOptions& opt) {
    VerifySummary sum = run_verify(opt.seed, opt.count, opt.size, opt.degree);
    CommandResult res;
    Json& j = res.output;
    j["command"] = "verify";
    j["seed"] = opt.seed;
    j["count"] = opt.count;
    j["size"] = opt.size ? Json(opt.size) : Json("random");
    j["degree"] = opt.degree ? Json(opt.degree) : Json("random");
    Json inst = Json::array();
    for (const auto& r : sum.instances) {
        Json e;
        e["index"] = r.index;
        e["seed"] = r.seed;
        e["n"] = r.n;
        e["degree"] = r.degree;
        e["lambda0"] = r.center;
        e["chi"] = r.expected_chi;
        e["checks"] = r.checks.size();
        e["pass"] = r.pass();
        Json failed = Json::array();
        for (const auto& c : r.checks)
            if (!c.pass) failed.push_back({{"check", c.name}, {"detail", c.detail}});
        if (!failed.empty()) e["failed"] = std::move(failed);
        inst.push_back(std::move(e));
    }
    j["instances"] = std::move(inst);
    Json files = Json::array();
    for (const auto& [index, rep] : sum.reproducers) {
        const std::string name = opt.reproducer_dir + "/reproducer-" + std::to_string(opt.seed) + "-" + std::to_string(index) + ".json";
        Json pj = problem_to_json(rep.build(), rep.center, "reproducer");
        pj["planted"] = detail::planted_json(rep);
        std::ofstream out(name);
        out << pj.dump(2) << "\n";
        files.push_back(name);
    }
    if (!files.empty()) j["reproducers"] = std::move(files);
    j["passed"] = sum.passed;
    j["failed"] = sum.count - sum.passed;
    j["summary"] = std::to_string(sum.passed) + "/" + std::to_string(sum.count) + " pass";
    if (sum.passed != sum.count) res.exit_code = kExitDisagree;
    return res;
}

/// Runs a named command; errors are mapped to exit codes with a JSON error body.
inline CommandResult run_command(const std::string& name, const CommandOptions& opt) {
    auto error = [&](int code, const std::string& msg) {
        CommandResult r;
        r.output["command"] = name;
        r.output["error"] = msg;
        r.exit_code = code;
        return r;
    };
    try {
        if (name == "verify") return cmd_verify(opt);
        if (!opt.input) return error(kExitInput, "missing --input");
        const ProblemFile pf = read_problem_file(*opt.input);
        const bool gaussian = pf.field == "Qi";
        if (name == "chi") return gaussian ? detail::chi_impl<GaussianRational>(pf, opt) : detail::chi_impl<Rational>(pf, opt);
        if (name == "spectrum") return gaussian ? detail::spectrum_impl<GaussianRational>(pf) : detail::spectrum_impl<Rational>(pf);
        if (name == "schur") return gaussian ? detail::schur_impl<GaussianRational>(pf, opt) : detail::schur_impl<Rational>(pf, opt);
        if (name == "smith") return gaussian ? detail::smith_impl<GaussianRational>(pf, opt) : detail::smith_impl<Rational>(pf, opt);
        if (name == "tangent") return gaussian ? detail::tangent_impl<GaussianRational>(pf, opt) : detail::tangent_impl<Rational>(pf, opt);
        if (name == "bifurcate") return detail::bifurcate_impl(pf, opt);
        return error(kExitInput, "unknown command '" + name + "'");
    } catch (const DegeneratePath& e) {
        return error(kExitDegenerate, e.what());
    } catch (const InvariantViolation& e) {
        return error(kExitDisagree, e.what());
    } catch (const FeasibilityError& e) {
        return error(kExitInput, e.what());
    } catch (const ConvergenceFailure& e) {
        return error(kExitDisagree, e.what());
    } catch (const InvalidInput& e) {
        return error(kExitInput, e.what());
    }
}

}  // namespace algmult
