#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mixfrac/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Non-local mixed parabolic-hyperbolic problem with a Caputo derivative"};
    app.require_subcommand(1);

    std::string config;
    int levels = 0;
    auto* solve = app.add_subcommand("solve", "solve and write the field and diagnostics");
    solve->add_option("config", config, "INI configuration")->required()->check(CLI::ExistingFile);
    auto* verify = app.add_subcommand("verify", "residual checks only; exit 3 above verify_tol");
    verify->add_option("config", config, "INI configuration")->required()->check(CLI::ExistingFile);
    auto* converge = app.add_subcommand("converge", "refinement study with empirical orders");
    converge->add_option("config", config, "INI configuration")->required()->check(CLI::ExistingFile);
    converge->add_option("--levels", levels, "number of h-halvings (overrides [converge] levels)")
        ->check(CLI::Range(2, 12));
    auto* oracle = app.add_subcommand("oracle", "finite-difference reference for the square");
    oracle->add_option("config", config, "INI configuration")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mixfrac::cli::kValidation;
    }

    if (*solve) return mixfrac::cli::run_solve(config, std::cout, std::cerr);
    if (*verify) return mixfrac::cli::run_verify(config, std::cout, std::cerr);
    if (*converge) return mixfrac::cli::run_converge(config, levels, std::cout, std::cerr);
    return mixfrac::cli::run_oracle(config, std::cout, std::cerr);
}
