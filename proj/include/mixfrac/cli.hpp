#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mixfrac/assembler.hpp"
#include "mixfrac/oracle.hpp"

namespace mixfrac::cli {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3 };

/// Effective run configuration. Sections [problem], [discretization], [output],
/// [converge], [oracle] of an INI file; every key has a default except the
/// problem data. Numeric values may be constant expressions ("1/128").
struct RunConfig {
    ProblemSpec spec;
    DiscretizationConfig disc;
    std::string field_path = "field.csv";
    std::string diagnostics_path = "diagnostics.txt";
    double verify_tol = 5e-3;  // verify fails (exit 3) when a condition residual exceeds it
    int levels = 3;
    std::string converge_mode = "pipeline";  // or "volterra" (manufactured)
    oracle::FdConfig fd;
    oracle::BoundaryData oracle_data;
    bool oracle_series = false;  // lateral data identically zero: series reference applies
    /// key = value pairs after defaults, in file order of the known keys.
    std::vector<std::pair<std::string, std::string>> echo;
};

/// Throws ValidationError (and expression errors) on a malformed file.
/// MIXFRAC_FIELD and MIXFRAC_DIAGNOSTICS override the output paths.
RunConfig load_config(const std::string& path);

/// Subcommand runners: artifacts to the configured paths, a short summary to `out`,
/// stage-labelled errors to `err`. Return the process exit code.
int run_solve(const std::string& config_path, std::ostream& out, std::ostream& err);
int run_verify(const std::string& config_path, std::ostream& out, std::ostream& err);
int run_converge(const std::string& config_path, int levels, std::ostream& out, std::ostream& err);
int run_oracle(const std::string& config_path, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Empirical order log2(r_k / r_{k+1}), or "floor" when both are below `floor`.
std::string order_label(double coarse, double fine, double floor = 1e-8);

}  // namespace mixfrac::cli
