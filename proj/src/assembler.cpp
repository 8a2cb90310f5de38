#include "mixfrac/assembler.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/fracquad.hpp"

namespace mixfrac {

using hyperbolic::Domain;

namespace {

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        e.rethrow_in(name);
    }
}

constexpr int kFineTau1 = 1024;

// C1 cubic Hermite interpolant on the uniform grid of [0,1] from values and slopes.
// The Omega0 representation differentiates its data (twice in x as y -> 0, and the
// boundary integrals resolve y-kinks poorly), so piecewise-linear tables would leak
// into the residual checks.
std::function<double(double)> hermite(std::vector<double> values, std::vector<double> slopes) {
    const int n = static_cast<int>(values.size()) - 1;
    auto v = std::make_shared<const std::vector<double>>(std::move(values));
    auto d = std::make_shared<const std::vector<double>>(std::move(slopes));
    return [v, d, n](double x) {
        const double s = std::clamp(x, 0.0, 1.0) * n;
        const int k = std::min(static_cast<int>(s), n - 1);
        const double t = s - k, h = 1.0 / n;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * (*v)[k] + (t3 - 2 * t2 + t) * h * (*d)[k] + (-2 * t3 + 3 * t2) * (*v)[k + 1] +
               (t3 - t2) * h * (*d)[k + 1];
    };
}

// C2 clamped cubic spline through the node values with end slopes s0, s1.
std::function<double(double)> clamped_spline(const std::vector<double>& v, double s0, double s1) {
    const int n = static_cast<int>(v.size()) - 1;
    const double h = 1.0 / n;
    // node slopes m_k: m_{k-1} + 4 m_k + m_{k+1} = 3 (v_{k+1} - v_{k-1}) / h
    std::vector<double> m(n + 1), c(n + 1), r(n + 1);
    m[0] = s0;
    m[n] = s1;
    if (n > 1) {
        for (int k = 1; k < n; ++k) r[k] = 3.0 * (v[k + 1] - v[k - 1]) / h;
        r[1] -= s0;
        r[n - 1] -= s1;
        // Thomas sweep on the constant (1,4,1) system
        c[1] = 1.0 / 4.0;
        r[1] /= 4.0;
        for (int k = 2; k < n; ++k) {
            const double den = 4.0 - c[k - 1];
            c[k] = 1.0 / den;
            r[k] = (r[k] - r[k - 1]) / den;
        }
        m[n - 1] = r[n - 1];
        for (int k = n - 2; k >= 1; --k) m[k] = r[k] - c[k] * m[k + 1];
    }
    return hermite(v, std::move(m));
}

std::function<double(double)> hermite_tau1(const tau1::Tau1Solution& t1, int n) {
    std::vector<double> v(n + 1), d(n + 1);
    for (int k = 0; k <= n; ++k) {
        v[k] = t1.value(static_cast<double>(k) / n);
        d[k] = t1.derivative(static_cast<double>(k) / n);
    }
    return hermite(std::move(v), std::move(d));
}

double max_abs_diff(double a, double b, double acc) { return std::max(acc, std::fabs(a - b)); }

}  // namespace

void DiscretizationConfig::validate() const {
    if (n < 4) throw ValidationError("trace grid needs at least 4 cells");
    if (out_n < 1 || check_n < 4) throw ValidationError("output and check grids need positive sizes");
    if (n_images < 0) throw ValidationError("n_images must be non-negative");
    if (!(series_tol > 0.0) || !(quad_tol > 0.0)) throw ValidationError("tolerances must be positive");
}

std::vector<std::pair<std::string, double>> Diagnostics::conditions() const {
    return {{"pde", std::max(pde_parabolic, pde_hyperbolic)},
            {"nonlocal", nonlocal},
            {"characteristic_cb", char_cb},
            {"characteristic_be", char_be},
            {"transmission", transmission}};
}

std::vector<std::pair<std::string, double>> Diagnostics::all() const {
    return {{"pde_parabolic", pde_parabolic},   {"pde_hyperbolic", pde_hyperbolic},
            {"nonlocal", nonlocal},             {"characteristic_cb", char_cb},
            {"characteristic_be", char_be},     {"transmission", transmission},
            {"jump_ab", jump_ab},               {"jump_aa0", jump_aa0},
            {"jump_bb0", jump_bb0},             {"flux_jump_aa0", flux_jump_aa0},
            {"flux_jump_bb0", flux_jump_bb0},   {"kernel_tail", kernel_tail}};
}

double Diagnostics::worst() const {
    double w = 0.0;
    for (const auto& [name, v] : all())
        if (name != "kernel_tail") w = std::max(w, v);
    return w;
}

Reconstruction::Reconstruction(ProblemSpec spec, const DiscretizationConfig& disc)
    : spec_(std::move(spec)), disc_(disc) {
    stage("validate", [&] {
        disc_.validate();
        spec_.validate();
        return 0;
    });
    cache_ = stage("kernels", [&] {
        return std::make_shared<const greens::KernelCache>(spec_.lambda, disc_.n_images, disc_.series_tol);
    });
    tau1_ = stage("tau1", [&] {
        tau1::Tau1Config cfg;
        cfg.gamma_factor_enabled = disc_.gamma_factor_enabled;
        cfg.quad_tol = disc_.quad_tol;
        cfg.n = disc_.n;
        return tau1::solve_tau1(spec_, cfg);
    });
    system_ = stage("volterra", [&] {
        auto s = volterra::build_system(disc_.n, spec_, tau1_, *cache_);
        volterra::solve_march(s);
        return s;
    });
    traces_ = stage("recover", [&] { return volterra::recover_traces(system_, spec_, tau1_); });
    tau1_fine_ = hermite_tau1(tau1_, kFineTau1);
    rebuild_omega0();
}

void Reconstruction::rebuild_omega0() {
    omega0_ = std::make_shared<const Omega0Representation>(*cache_, tau1_fine_,
                                                           clamped_spline(traces_.tau2.values(), system_.mu2.front(), system_.mu2.back()),
                                                           clamped_spline(traces_.tau3.values(), system_.mu3.front(), system_.mu3.back()), 20);
}

Domain Reconstruction::classify(double x, double y) const {
    constexpr double tol = 1e-12;
    if (hyperbolic::inside(Domain::Omega0, x, y, tol)) return Domain::Omega0;
    for (Domain d : {Domain::Omega1, Domain::Omega2, Domain::Omega3})
        if (hyperbolic::inside(d, x, y, tol)) return d;
    throw OutOfDomain("point (" + std::to_string(x) + ", " + std::to_string(y) + ") is outside the domain");
}

double Reconstruction::u(double x, double y) const {
    const Domain d = classify(x, y);
    if (d == Domain::Omega0) return (*omega0_)(std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0));
    return hyperbolic::dalembert_eval(d, traces_, x, y);
}

Reconstruction Reconstruction::with_fault(Fault which, double delta) const {
    Reconstruction r = *this;
    auto shift = [delta](const hyperbolic::SampledTrace& t) {
        auto v = t.values();
        for (double& x : v) x += delta;
        return hyperbolic::SampledTrace(t.h(), std::move(v));
    };
    switch (which) {
        case Fault::Nu1:
            r.traces_.nu1 = shift(traces_.nu1);
            break;
        case Fault::Nu3:
            r.traces_.nu3 = shift(traces_.nu3);
            break;
        case Fault::Mu2:
            for (double& m : r.system_.mu2) m += delta;
            r.traces_ = volterra::recover_traces(r.system_, spec_, tau1_);
            break;
    }
    r.rebuild_omega0();
    return r;
}

std::vector<Sample> sample_field(const Reconstruction& r, int out_n) {
    if (out_n < 1) throw ValidationError("output grid needs at least one cell");
    const double h = 1.0 / out_n;
    std::vector<Sample> out;
    for (int j = 0; j <= out_n; ++j)
        for (int i = 0; i <= out_n; ++i) {
            const double x = i * h, y = j * h;
            out.push_back({x, y, r.u(x, y), Domain::Omega0});
        }
    const int half = out_n / 2;
    // lattice points strictly off the type-change lines
    for (int j = 1; j <= half; ++j)
        for (int i = j; i <= out_n - j; ++i) {
            const double x = i * h, y = -j * h;
            out.push_back({x, y, hyperbolic::dalembert_eval(Domain::Omega1, r.traces(), x, y), Domain::Omega1});
        }
    for (int i = 1; i <= half; ++i)
        for (int j = i; j <= out_n - i; ++j) {
            const double x = -i * h, y = j * h;
            out.push_back({x, y, hyperbolic::dalembert_eval(Domain::Omega2, r.traces(), x, y), Domain::Omega2});
        }
    for (int i = 1; i <= half; ++i)
        for (int j = i; j <= out_n - i; ++j) {
            const double x = 1.0 + i * h, y = j * h;
            out.push_back({x, y, hyperbolic::dalembert_eval(Domain::Omega3, r.traces(), x, y), Domain::Omega3});
        }
    return out;
}

namespace {

// Columns share a graded y-mesh so the L1 stencil resolves the y^lambda layer at y = 0.
double check_pde_parabolic(const Reconstruction& r) {
    const int m = r.disc().check_n, M = 4 * m;
    const double h = 1.0 / m, lambda = r.spec().lambda;
    const double grade = std::min((2.0 - lambda) / lambda, 3.0);
    std::vector<double> t(M + 1);
    for (int k = 0; k <= M; ++k) t[k] = std::pow(static_cast<double>(k) / M, grade);
    std::vector<std::vector<double>> col(m + 1, std::vector<double>(M + 1));  // col[i][k] = u(x_i, t_k)
    for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= M; ++k) col[i][k] = r.omega0()(i * h, t[k]);
    // L1 on the mesh and on every other node, extrapolated at order 2 - lambda
    std::vector<double> tc(M / 2 + 1);
    for (int k = 0; k <= M / 2; ++k) tc[k] = t[2 * k];
    const double w = std::pow(2.0, 2.0 - lambda);
    std::vector<std::vector<double>> dl(m + 1);
    for (int i = 1; i < m; ++i) {
        std::vector<double> gc(M / 2 + 1);
        for (int k = 0; k <= M / 2; ++k) gc[k] = col[i][2 * k];
        const auto fine = fracquad::caputo_l1_graded(col[i], t, lambda);
        const auto coarse = fracquad::caputo_l1_graded(gc, tc, lambda);
        dl[i].resize(M / 2 + 1);
        for (int k = 0; k <= M / 2; ++k) dl[i][k] = (w * fine[2 * k] - coarse[k]) / (w - 1.0);
    }
    double res = 0.0;
    for (int k = 0; k <= M / 2; ++k) {
        if (tc[k] < 0.25) continue;
        for (int i = 1; i < m; ++i) {
            const double uxx = (col[i + 1][2 * k] - 2.0 * col[i][2 * k] + col[i - 1][2 * k]) / (h * h);
            res = std::max(res, std::fabs(uxx - dl[i][k]));
        }
    }
    return res;
}

double check_pde_hyperbolic(const Reconstruction& r) {
    const int m = r.disc().check_n;
    const double h = 1.0 / m;
    const auto& t = r.traces();
    double res = 0.0;
    for (int j = 1; j < m / 2; ++j)
        for (int i = j + 1; i < m - j - 1; ++i) {
            res = std::max(res, std::fabs(hyperbolic::wave_residual(Domain::Omega1, t, i * h, -j * h, 0.5 * h)));
            res = std::max(res, std::fabs(hyperbolic::wave_residual(Domain::Omega2, t, -j * h, i * h, 0.5 * h)));
            res = std::max(res, std::fabs(hyperbolic::wave_residual(Domain::Omega3, t, 1.0 + j * h, i * h, 0.5 * h)));
        }
    return res;
}

// Horizon short enough that the corner layers (width ~ y^rho) do not reach column x.
double layer_free_horizon(double x, double rho) { return std::max(std::pow(x / 20.0, 1.0 / rho), 1e-280); }

// Graded-mesh L1 value of D^lambda u(x, .) at y = T.
double caputo_at(const Reconstruction& r, double x, double T) {
    const double lambda = r.spec().lambda;
    const int M = 512;
    const double grade = std::min((2.0 - lambda) / lambda, 8.0);
    std::vector<double> t(M + 1), g(M + 1);
    for (int k = 0; k <= M; ++k) {
        t[k] = T * std::pow(static_cast<double>(k) / M, grade);
        g[k] = r.omega0()(x, t[k]);
    }
    return fracquad::caputo_l1_graded(g, t, lambda).back();
}

}  // namespace

Diagnostics verify_conditions(const Reconstruction& r) {
    Diagnostics d;
    const auto& spec = r.spec();
    const auto& t = r.traces();
    const double lambda = spec.lambda, rho = r.kernels().rho();

    d.pde_parabolic = check_pde_parabolic(r);
    d.pde_hyperbolic = check_pde_hyperbolic(r);

    for (int k = 0; k <= 100; ++k) {
        const double s = 0.005 * k;
        const double lhs = spec.a1(s) * hyperbolic::char_trace(hyperbolic::Characteristic::AD, t, s) +
                           spec.a2(s) * hyperbolic::char_trace(hyperbolic::Characteristic::AC, t, s);
        d.nonlocal = max_abs_diff(lhs, spec.a3(s), d.nonlocal);
        const double x = 0.5 + s;
        d.char_cb = max_abs_diff(hyperbolic::dalembert_eval(Domain::Omega1, t, x, x - 1.0), spec.phi1(x), d.char_cb);
        d.char_be = max_abs_diff(hyperbolic::dalembert_eval(Domain::Omega3, t, 1.0 + s, s), spec.phi2(s), d.char_be);
    }

    // y -> 0+ limits on interior columns, extrapolated in y^lambda from T and T/2
    const double w = std::pow(2.0, lambda);
    for (double x : {0.25, 0.375, 0.5, 0.625, 0.75}) {
        const double T = layer_free_horizon(std::min(x, 1.0 - x), rho);
        const double c1 = caputo_at(r, x, T), c2 = caputo_at(r, x, 0.5 * T);
        d.transmission = max_abs_diff((w * c2 - c1) / (w - 1.0), t.nu1(x), d.transmission);
        const double u1 = r.omega0()(x, T), u2 = r.omega0()(x, 0.5 * T);
        d.jump_ab = max_abs_diff((w * u2 - u1) / (w - 1.0), hyperbolic::dalembert_eval(Domain::Omega1, t, x, 0.0),
                                 d.jump_ab);
    }

    // lateral lines: values by linear extrapolation, fluxes by one-sided differences
    const double e = 1e-3;
    for (double y : {0.25, 0.5, 0.75, 1.0}) {
        const double a1 = r.omega0()(e, y), a2 = r.omega0()(2 * e, y);
        const double b1 = r.omega0()(1 - e, y), b2 = r.omega0()(1 - 2 * e, y);
        const double tau2 = t.tau2(y), tau3 = t.tau3(y);
        d.jump_aa0 = max_abs_diff(2 * a1 - a2, tau2, d.jump_aa0);
        d.jump_bb0 = max_abs_diff(2 * b1 - b2, tau3, d.jump_bb0);
        d.flux_jump_aa0 = max_abs_diff((4 * a1 - a2 - 3 * tau2) / (2 * e), t.nu2(y), d.flux_jump_aa0);
        d.flux_jump_bb0 = max_abs_diff((3 * tau3 - 4 * b1 + b2) / (2 * e), t.nu3(y), d.flux_jump_bb0);
    }

    for (int k = 0; k < static_cast<int>(greens::KernelKind::kCount); ++k)
        d.kernel_tail = std::max(d.kernel_tail, r.kernels().worst_tail(static_cast<greens::KernelKind>(k)));
    return d;
}

SolutionField solve_problem(const ProblemSpec& spec, const DiscretizationConfig& disc) {
    SolutionField f;
    auto r = std::make_shared<const Reconstruction>(spec, disc);
    f.samples = stage("reconstruct", [&] { return sample_field(*r, disc.out_n); });
    f.diagnostics = stage("verify", [&] { return verify_conditions(*r); });
    f.solution = std::move(r);
    return f;
}

}  // namespace mixfrac
