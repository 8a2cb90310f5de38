#include "mixfrac/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mixfrac/errors.hpp"
#include "mixfrac/exprlang.hpp"
#include "mixfrac/volterra.hpp"

namespace mixfrac::cli {

namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

struct Key {
    const char* section;
    const char* name;
    const char* fallback;  // nullptr: no default
};

// Echo order of the effective configuration.
constexpr Key kKeys[] = {
    {"problem", "lambda", "0.5"},
    {"problem", "a1", nullptr},
    {"problem", "a2", nullptr},
    {"problem", "a3", nullptr},
    {"problem", "phi1", nullptr},
    {"problem", "phi2", nullptr},
    {"discretization", "h", "1/128"},
    {"discretization", "check_n", "32"},
    {"discretization", "n_images", "5"},
    {"discretization", "series_tol", "1e-14"},
    {"discretization", "quad_tol", "1e-12"},
    {"discretization", "gamma_factor", "false"},
    {"discretization", "verify_tol", "5e-3"},
    {"output", "field", "field.csv"},
    {"output", "diagnostics", "diagnostics.txt"},
    {"output", "grid", "32"},
    {"converge", "levels", "3"},
    {"converge", "mode", "pipeline"},
    {"oracle", "tau1", "sin(pi*x)"},
    {"oracle", "tau2", "0"},
    {"oracle", "tau3", "0"},
    {"oracle", "nx", "129"},
    {"oracle", "ny", "129"},
    {"oracle", "substeps", "16"},
};

double constant(const std::string& key, const std::string& src) {
    try {
        return expr::eval(expr::parse(src, ""), 0.0);
    } catch (const Error& e) {
        throw ValidationError(key + ": " + e.what());
    }
}

int integer(const std::string& key, const std::string& src) {
    const double v = constant(key, src);
    if (v != std::trunc(v) || std::fabs(v) > 1e9) throw ValidationError(key + " must be an integer, got " + src);
    return static_cast<int>(v);
}

bool boolean(const std::string& key, const std::string& src) {
    if (src == "true" || src == "1" || src == "yes" || src == "on") return true;
    if (src == "false" || src == "0" || src == "no" || src == "off") return false;
    throw ValidationError(key + " must be true or false, got " + src);
}

// "t,value,derivative" rows; '#' comments and a non-numeric header are skipped
ScalarFunction table(const fs::path& file, const std::string& key) {
    std::ifstream in(file);
    if (!in) throw ValidationError(key + ": cannot read table " + file.string());
    std::vector<double> t, v, d;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream row(line);
        double a, b, c;
        if (!(row >> a)) {
            if (line.find_first_not_of(' ') != std::string::npos && t.empty()) continue;  // header
            if (line.find_first_not_of(' ') == std::string::npos) continue;
            throw ValidationError(key + ": malformed row " + std::to_string(lineno) + " in " + file.string());
        }
        if (!(row >> b >> c))
            throw ValidationError(key + ": row " + std::to_string(lineno) + " needs t, value, derivative");
        t.push_back(a);
        v.push_back(b);
        d.push_back(c);
    }
    return ScalarFunction::tabulated(std::move(t), std::move(v), std::move(d), "table:" + file.string());
}

ScalarFunction datum(const std::string& key, const std::string& src, const char* var, const fs::path& base) {
    if (src.rfind("table:", 0) == 0) {
        fs::path p = src.substr(6);
        if (p.is_relative()) p = base / p;
        return table(p, key);
    }
    try {
        return expr::scalar_function(src, var);
    } catch (const Error& e) {
        e.rethrow_in(key);
    }
    return {};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    return out;
}

void write_report(const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& sections) {
    auto out = open_output(cfg.diagnostics_path);
    out << "[config]\n";
    for (const auto& [k, v] : cfg.echo) out << k << " = " << v << '\n';
    for (const auto& [k, v] : sections) {
        if (v.empty()) out << '\n' << k << '\n';
        else out << k << " = " << v << '\n';
    }
}

void write_field(const std::string& path, const std::vector<Sample>& samples) {
    auto out = open_output(path);
    out << "x,y,u,domain\n";
    for (const auto& s : samples)
        out << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.u) << ','
            << hyperbolic::domain_name(s.domain) << '\n';
}

bool is_validation(const Error& e) {
    static const std::set<std::string> kinds{"ValidationError", "DegenerateCoefficients", "SyntaxError",
                                             "UnknownIdentifier", "UnsupportedDerivative", "EvalError"};
    return kinds.count(e.kind()) != 0;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_validation(e) ? kValidation : kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

void require_problem(const RunConfig& cfg) {
    const ProblemSpec& p = cfg.spec;
    for (const auto* f : {&p.a1, &p.a2, &p.a3, &p.phi1, &p.phi2})
        if (!f->value) throw ValidationError("[problem] needs a1, a2, a3, phi1 and phi2");
}

std::vector<std::pair<std::string, std::string>> diagnostics_section(const Diagnostics& d) {
    std::vector<std::pair<std::string, std::string>> s{{"[diagnostics]", ""}};
    for (const auto& [k, v] : d.all()) s.emplace_back(k, format_double(v));
    return s;
}

// manufactured mu2 = y, mu3 = 1 through the forward operator
double volterra_manufactured_error(int n, const greens::KernelCache& c) {
    auto s = volterra::make_system(n, c);
    const auto m2 = [](double y) { return y; };
    const auto m3 = [](double) { return 1.0; };
    for (int k = 0; k <= n; ++k) std::tie(s.f1[k], s.f2[k]) = volterra::apply_operator(k * s.h, m2, m3, c);
    volterra::solve_march(s);
    double err = 0.0;
    for (int k = 0; k <= n; ++k)
        err = std::max({err, std::fabs(s.mu2[k] - k * s.h), std::fabs(s.mu3[k] - 1.0)});
    return err;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string order_label(double coarse, double fine, double floor) {
    if (coarse <= floor && fine <= floor) return "floor";
    if (fine <= 0.0) return "inf";
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << std::log2(coarse / fine);
    return s.str();
}

RunConfig load_config(const std::string& path) {
    ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ValidationError("config " + e.message() + " (" + e.filename() + ":" + std::to_string(e.line()) + ")");
    }
    std::map<std::string, std::set<std::string>> known;
    for (const auto& k : kKeys) known[k.section].insert(k.name);
    for (const auto& [section, body] : tree) {
        if (!known.count(section)) throw ValidationError("unknown config section [" + section + "]");
        for (const auto& [key, leaf] : body)
            if (!known[section].count(key)) throw ValidationError("unknown key '" + key + "' in [" + section + "]");
    }

    RunConfig cfg;
    const fs::path base = fs::path(path).parent_path();
    std::map<std::string, std::string> v;
    for (const auto& k : kKeys) {
        const std::string full = std::string(k.section) + "." + k.name;
        auto got = tree.get_optional<std::string>(full);
        if (got) v[full] = *got;
        else if (k.fallback) v[full] = k.fallback;
    }
    if (const char* f = std::getenv("MIXFRAC_FIELD")) v["output.field"] = f;
    if (const char* f = std::getenv("MIXFRAC_DIAGNOSTICS")) v["output.diagnostics"] = f;
    for (const auto& k : kKeys) {
        const std::string full = std::string(k.section) + "." + k.name;
        if (v.count(full)) cfg.echo.emplace_back(full, v[full]);
    }

    ProblemSpec& p = cfg.spec;
    p.lambda = constant("problem.lambda", v["problem.lambda"]);
    const std::pair<const char*, const char*> vars[] = {{"a1", "t"}, {"a2", "t"}, {"a3", "t"}, {"phi1", "x"}, {"phi2", "y"}};
    ScalarFunction* slots[] = {&p.a1, &p.a2, &p.a3, &p.phi1, &p.phi2};
    for (int i = 0; i < 5; ++i) {
        const std::string full = std::string("problem.") + vars[i].first;
        if (v.count(full)) *slots[i] = datum(full, v[full], vars[i].second, base);
    }

    const double h = constant("discretization.h", v["discretization.h"]);
    if (!(h > 0.0 && h <= 0.125)) throw ValidationError("discretization.h must lie in (0, 1/8]");
    const long n = std::lround(1.0 / h);
    if (std::fabs(n * h - 1.0) > 1e-9) throw ValidationError("discretization.h must divide 1");
    cfg.disc.n = static_cast<int>(n);
    cfg.disc.check_n = integer("discretization.check_n", v["discretization.check_n"]);
    cfg.disc.n_images = integer("discretization.n_images", v["discretization.n_images"]);
    cfg.disc.series_tol = constant("discretization.series_tol", v["discretization.series_tol"]);
    cfg.disc.quad_tol = constant("discretization.quad_tol", v["discretization.quad_tol"]);
    cfg.disc.gamma_factor_enabled = boolean("discretization.gamma_factor", v["discretization.gamma_factor"]);
    cfg.verify_tol = constant("discretization.verify_tol", v["discretization.verify_tol"]);
    cfg.disc.out_n = integer("output.grid", v["output.grid"]);
    cfg.disc.validate();

    cfg.field_path = v["output.field"];
    cfg.diagnostics_path = v["output.diagnostics"];
    cfg.levels = integer("converge.levels", v["converge.levels"]);
    cfg.converge_mode = v["converge.mode"];
    if (cfg.converge_mode != "pipeline" && cfg.converge_mode != "volterra")
        throw ValidationError("converge.mode must be pipeline or volterra");

    cfg.fd.lambda = p.lambda;
    cfg.fd.nx = integer("oracle.nx", v["oracle.nx"]);
    cfg.fd.ny = integer("oracle.ny", v["oracle.ny"]);
    cfg.fd.substeps = integer("oracle.substeps", v["oracle.substeps"]);
    auto trace = [&](const char* key, const char* var) {
        const auto f = datum(std::string("oracle.") + key, v[std::string("oracle.") + key], var, base);
        return oracle::Trace(f.value);
    };
    cfg.oracle_data = {trace("tau1", "x"), trace("tau2", "y"), trace("tau3", "y")};
    auto is_zero = [&](const char* key) {
        const auto& src = v[std::string("oracle.") + key];
        if (src.rfind("table:", 0) == 0) return false;
        const auto e = expr::parse(src, "y");
        return e->kind == expr::Kind::Number && e->value == 0.0;
    };
    cfg.oracle_series = is_zero("tau2") && is_zero("tau3");
    return cfg;
}

int run_solve(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config(config_path);
        require_problem(cfg);
        const auto field = solve_problem(cfg.spec, cfg.disc);
        write_field(cfg.field_path, field.samples);
        write_report(cfg, diagnostics_section(field.diagnostics));
        out << "solved: " << field.samples.size() << " samples, worst residual "
            << format_double(field.diagnostics.worst()) << '\n';
        return static_cast<int>(kOk);
    });
}

int run_verify(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config(config_path);
        require_problem(cfg);
        const Reconstruction r(cfg.spec, cfg.disc);
        const auto d = verify_conditions(r);
        bool pass = true;
        for (const auto& [k, v] : d.conditions()) {
            out << std::left << std::setw(20) << k << format_double(v) << '\n';
            pass = pass && v <= cfg.verify_tol;
        }
        auto report = diagnostics_section(d);
        report.emplace_back("status", pass ? "pass" : "fail");
        write_report(cfg, report);
        out << (pass ? "pass" : "fail") << '\n';
        return static_cast<int>(pass ? kOk : kNumerical);
    });
}

int run_converge(const std::string& config_path, int levels, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config(config_path);
        const int count = levels > 0 ? levels : cfg.levels;
        if (count < 2) throw ValidationError("converge needs at least 2 levels");
        std::vector<std::pair<std::string, std::string>> report{{"[converge]", ""},
                                                               {"mode", cfg.converge_mode},
                                                               {"levels", std::to_string(count)}};
        std::vector<std::string> names;
        std::vector<std::vector<double>> rows;  // rows[level][diagnostic]
        std::vector<double> hs;
        for (int k = 0; k < count; ++k) {
            auto disc = cfg.disc;
            disc.n = cfg.disc.n << k;
            hs.push_back(1.0 / disc.n);
            std::vector<double> row;
            if (cfg.converge_mode == "volterra") {
                const greens::KernelCache c(cfg.spec.lambda, disc.n_images, disc.series_tol);
                names = {"volterra_error"};
                row.push_back(volterra_manufactured_error(disc.n, c));
            } else {
                require_problem(cfg);
                const auto d = verify_conditions(Reconstruction(cfg.spec, disc));
                names.clear();
                for (const auto& [name, v] : d.all()) {
                    names.push_back(name);
                    row.push_back(v);
                }
            }
            rows.push_back(std::move(row));
        }
        out << std::left << std::setw(18) << "h";
        for (double h : hs) out << std::setw(14) << format_double(h);
        out << '\n';
        for (int k = 0; k < count; ++k) report.emplace_back("h." + std::to_string(k), format_double(hs[k]));
        for (std::size_t i = 0; i < names.size(); ++i) {
            out << std::setw(18) << names[i];
            for (int k = 0; k < count; ++k) {
                std::ostringstream cell;
                cell << std::scientific << std::setprecision(4) << rows[k][i];
                out << std::setw(14) << cell.str();
                report.emplace_back(names[i] + "." + std::to_string(k), format_double(rows[k][i]));
            }
            out << " orders";
            for (int k = 1; k < count; ++k) {
                const auto label = order_label(rows[k - 1][i], rows[k][i]);
                out << ' ' << label;
                report.emplace_back(names[i] + ".order." + std::to_string(k), label);
            }
            out << '\n';
        }
        write_report(cfg, report);
        return static_cast<int>(kOk);
    });
}

int run_oracle(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config(config_path);
        const auto fd = oracle::fd_first_bvp(cfg.oracle_data, cfg.fd);
        std::vector<Sample> samples;
        for (std::size_t j = 0; j < fd.y.size(); ++j)
            for (std::size_t i = 0; i < fd.x.size(); ++i)
                samples.push_back({fd.x[i], fd.y[j], fd.at(static_cast<int>(i), static_cast<int>(j)),
                                   hyperbolic::Domain::Omega0});
        write_field(cfg.field_path, samples);
        std::vector<std::pair<std::string, std::string>> report{{"[oracle]", ""}};
        const double rep = oracle::compare_representation(cfg.oracle_data, cfg.fd);
        report.emplace_back("fd_vs_representation", format_double(rep));
        out << "fd_vs_representation  " << format_double(rep) << '\n';
        if (cfg.oracle_series) {
            const auto b = oracle::sine_coefficients(cfg.oracle_data.tau1, 64);
            double e = 0.0;
            for (std::size_t j = 1; j < fd.y.size(); ++j)
                for (std::size_t i = 1; i + 1 < fd.x.size(); ++i)
                    e = std::max(e, std::fabs(fd.at(static_cast<int>(i), static_cast<int>(j)) -
                                              oracle::sine_series_solution(b, cfg.fd.lambda, fd.x[i], fd.y[j])));
            report.emplace_back("fd_vs_series", format_double(e));
            out << "fd_vs_series          " << format_double(e) << '\n';
        }
        write_report(cfg, report);
        return static_cast<int>(kOk);
    });
}

}  // namespace mixfrac::cli
