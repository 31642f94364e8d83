// algmult: algebraic multiplicity of eigenvalues of analytic operator paths.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "algmult/commands.hpp"

int main(int argc, char** argv) {
    using namespace algmult;
    CLI::App app{"Algebraic multiplicity of generalized eigenvalues of matrix polynomial paths"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::string input, lambda0, json_out;
    std::size_t max_order = 0;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input,-i", input, "problem file (JSON)")->required();
        sub->add_option("--json-out", json_out, "also write the result to this file");
    };
    auto add_center = [&](CLI::App* sub) { sub->add_option("--lambda0", lambda0, "point of evaluation, e.g. 1/2 or 1+2i"); };

    auto* chi = app.add_subcommand("chi", "compute χ[𝔏,λ₀] by every route and check agreement");
    add_input(chi);
    add_center(chi);
    auto* spectrum = app.add_subcommand("spectrum", "list generalized eigenvalues with multiplicities");
    add_input(spectrum);
    auto* schur = app.add_subcommand("schur", "Schur operator, local determinant and factorization witness");
    add_input(schur);
    add_center(schur);
    auto* smith = app.add_subcommand("smith", "local Smith form and linearization");
    add_input(smith);
    add_center(smith);
    auto* tangent = app.add_subcommand("tangent", "tangent order and intersection index of a pencil");
    add_input(tangent);
    add_center(tangent);
    tangent->add_option("--max-order", max_order, "largest differential order to search");
    auto* bifurcate = app.add_subcommand("bifurcate", "nonlinear eigenvalue test for L(λ)u + N(λ,u) = 0");
    add_input(bifurcate);
    add_center(bifurcate);
    bifurcate->add_option("--delta", opt.delta, "half-width of the sampling interval around λ₀");
    auto* verify = app.add_subcommand("verify", "cross-check all routes on random planted instances");
    verify->add_option("--seed", opt.seed, "master seed");
    verify->add_option("--count", opt.count, "number of instances");
    verify->add_option("--size", opt.size, "matrix size (default: random up to 5)");
    verify->add_option("--degree", opt.degree, "polynomial degree bound (default: up to 4)");
    verify->add_option("--reproducer-dir", opt.reproducer_dir, "where to write reproducers of failures");
    verify->add_option("--json-out", json_out, "also write the result to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    if (!input.empty()) opt.input = input;
    if (!lambda0.empty()) opt.lambda0 = lambda0;
    if (max_order) opt.max_order = max_order;

    const CommandResult res = run_command(name, opt);
    const std::string text = res.output.dump(2);
    std::cout << text << "\n";
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) {
            std::cerr << "cannot write " << json_out << "\n";
            return kExitInput;
        }
        out << text << "\n";
    }
    return res.exit_code;
}
