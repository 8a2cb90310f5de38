#include "mixfrac/volterra.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/fracquad.hpp"
#include "mixfrac/quadrature.hpp"
#include "mixfrac/specfun.hpp"

namespace mixfrac::volterra {

namespace {

void check_a1(double a1, double t) {
    if (a1 == 0.0) throw DegenerateCoefficients("a1 vanishes at t = " + std::to_string(t));
}

// 2[phi1((y+1)/2) - phi1(1/2)] = int_0^y phi1'((s+1)/2) ds
double phi1_rise(const ProblemSpec& spec, double y) { return 2.0 * (spec.phi1(0.5 * (y + 1.0)) - spec.phi1(0.5)); }

double f0_term(int side, double y, const tau1::Tau1Solution& t1, const greens::KernelCache& c, int nodes = 16) {
    if (y <= 0.0) return t1.derivative(side == 0 ? 0.0 : 1.0);
    return greens::trace_functional(side, [&](double x) { return t1.value(x); }, y, c, nodes);
}

}  // namespace

double remainder(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1) {
    const double t = 0.5 * y;
    const double a1 = spec.a1(t), a2 = spec.a2(t), a3 = spec.a3(t);
    check_a1(a1, t);
    const double da1 = spec.a1.d(t), da2 = spec.a2.d(t), da3 = spec.a3.d(t);
    const double B = a2 / a1;
    const double dB = (da2 * a1 - a2 * da1) / (a1 * a1);
    const double dA = (da3 * a1 - a3 * da1) / (a1 * a1);

    const double tau = t1.value(y), dtau = t1.derivative(y);
    const double nu1 = hyperbolic::trace_nu1(dtau, [&](double x) { return spec.phi1.d(x); }, y);
    // int_0^y nu1 = -(tau1(y) - tau1(0)) + rise
    const double int_nu1 = -(tau - t1.value(0.0)) + phi1_rise(spec, y);
    const double P = t1.value(0.0) + tau - int_nu1;
    return B * (dtau - nu1) + 0.5 * dB * P - dA;
}

double rhs_f1(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1, const greens::KernelCache& c) {
    return f0_term(0, y, t1, c) - remainder(y, spec, t1);
}

double rhs_f2(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1, const greens::KernelCache& c) {
    return spec.phi2.d(0.5 * y) - f0_term(1, y, t1, c);
}

VolterraSystem make_system(int n, const greens::KernelCache& c) {
    if (n < 1) throw DegenerateGrid("Volterra grid needs at least one cell");
    VolterraSystem s;
    s.lambda = c.lambda();
    s.n = n;
    s.h = 1.0 / n;
    s.lags = greens::build_lag_tables(s.h, n, c);
    s.singular.resize(n);
    const double g = specfun::recip_gamma(1.0 - c.rho());
    for (int j = 0; j < n; ++j) s.singular[j] = fracquad::abel_lag_weight(j, s.h, c.rho()) * g;
    s.f1.assign(n + 1, 0.0);
    s.f2.assign(n + 1, 0.0);
    return s;
}

VolterraSystem build_system(int n, const ProblemSpec& spec, const tau1::Tau1Solution& t1,
                            const greens::KernelCache& c) {
    auto s = make_system(n, c);
    for (int k = 0; k <= n; ++k) {
        const double y = k * s.h;
        s.f1[k] = rhs_f1(y, spec, t1, c);
        s.f2[k] = rhs_f2(y, spec, t1, c);
    }
    return s;
}

void solve_march(VolterraSystem& s) {
    const int n = s.n;
    if (static_cast<int>(s.f1.size()) != n + 1 || static_cast<int>(s.f2.size()) != n + 1)
        throw DegenerateGrid("right-hand side tables do not match the grid");
    std::vector<double> a(n), b(n);
    for (int j = 0; j < n; ++j) {
        a[j] = s.singular[j] + s.h * s.lags.k1_smooth[j];
        b[j] = s.h * s.lags.k2[j];
    }
    s.mu2.assign(n + 1, 0.0);
    s.mu3.assign(n + 1, 0.0);
    s.mu2[0] = s.f1[0];
    s.mu3[0] = s.f2[0];
    std::vector<double> c2(n), c3(n);  // cell means of the solved part

    const double d = 1.0 + 0.5 * a[0], o = -0.5 * b[0];
    const double det = d * d - o * o;
    if (!(std::fabs(det) > 1e-12 * d * d)) throw SingularStep("per-step matrix is singular; refine the grid");

    for (int m = 1; m <= n; ++m) {
        double h2 = 0.0, h3 = 0.0;  // history with cell m-1 only half known
        for (int k = 0; k < m - 1; ++k) {
            const int j = m - 1 - k;
            h2 += a[j] * c2[k] - b[j] * c3[k];
            h3 += a[j] * c3[k] - b[j] * c2[k];
        }
        h2 += 0.5 * (a[0] * s.mu2[m - 1] - b[0] * s.mu3[m - 1]);
        h3 += 0.5 * (a[0] * s.mu3[m - 1] - b[0] * s.mu2[m - 1]);
        const double r2 = s.f1[m] - h2, r3 = s.f2[m] - h3;
        s.mu2[m] = (d * r2 - o * r3) / det;
        s.mu3[m] = (d * r3 - o * r2) / det;
        c2[m - 1] = 0.5 * (s.mu2[m - 1] + s.mu2[m]);
        c3[m - 1] = 0.5 * (s.mu3[m - 1] + s.mu3[m]);
    }
}

hyperbolic::TraceTable recover_traces(const VolterraSystem& s, const ProblemSpec& spec,
                                      const tau1::Tau1Solution& t1) {
    if (static_cast<int>(s.mu2.size()) != s.n + 1) throw DegenerateGrid("system has not been solved");
    const int n = s.n;
    const double h = s.h;
    std::vector<double> tau1(n + 1), nu1(n + 1), tau2(n + 1), nu2(n + 1), tau3(n + 1), nu3(n + 1);
    const auto dphi1 = [&](double x) { return spec.phi1.d(x); };
    tau2[0] = t1.value(0.0);
    tau3[0] = spec.phi1(1.0);
    for (int k = 0; k <= n; ++k) {
        const double y = k * h;
        tau1[k] = t1.value(y);
        nu1[k] = hyperbolic::trace_nu1(t1.derivative(y), dphi1, y);
        if (k > 0) {
            tau2[k] = tau2[k - 1] + 0.5 * h * (s.mu2[k - 1] + s.mu2[k]);
            tau3[k] = tau3[k - 1] + 0.5 * h * (s.mu3[k - 1] + s.mu3[k]);
        }
        nu2[k] = s.mu2[k] + remainder(y, spec, t1);
        nu3[k] = -s.mu3[k] + spec.phi2.d(0.5 * y);
    }
    hyperbolic::TraceTable t;
    t.h = h;
    t.tau1 = {h, std::move(tau1)};
    t.nu1 = {h, std::move(nu1)};
    t.tau2 = {h, std::move(tau2)};
    t.nu2 = {h, std::move(nu2)};
    t.tau3 = {h, std::move(tau3)};
    t.nu3 = {h, std::move(nu3)};
    t.mu2 = {h, s.mu2};
    t.mu3 = {h, s.mu3};
    return t;
}

std::pair<double, double> green_route_fluxes(int k, const VolterraSystem& s, const tau1::Tau1Solution& t1,
                                             const greens::KernelCache& c) {
    if (k < 0 || k > s.n || static_cast<int>(s.mu2.size()) != s.n + 1)
        throw OutOfDomain("node index outside the solved grid");
    const double h = s.h, rho = c.rho(), y = k * h;
    const double g = specfun::recip_gamma(1.0 - rho);
    const auto& gl = quadrature::gauss_legendre(6);
    double i12 = 0.0, i13 = 0.0, i22 = 0.0, i23 = 0.0;  // int K1 mu2, K1 mu3, K2 mu2, K2 mu3
    for (int cell = 0; cell < k; ++cell) {
        const int j = k - 1 - cell;
        // lag u in [j h, (j+1) h]; mu linear, equal to mu[cell+1] at u = j h
        const double m2a = s.mu2[cell + 1], m2b = s.mu2[cell];
        const double m3a = s.mu3[cell + 1], m3b = s.mu3[cell];
        const double w0 = fracquad::abel_lag_weight(j, h, rho);
        const double w1 = std::pow(h, 2.0 - rho) * (std::pow(j + 1.0, 2.0 - rho) - std::pow(double(j), 2.0 - rho)) /
                          (2.0 - rho);  // int u^{1-rho}
        const double lin0 = w0, lin1 = (w1 - j * h * w0) / h;  // moments of 1 and (u - jh)/h
        i12 += g * (m2a * lin0 + (m2b - m2a) * lin1);
        i13 += g * (m3a * lin0 + (m3b - m3a) * lin1);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double theta = 0.5 * (gl.nodes[q] + 1.0);
            const double u = (j + theta) * h;
            const double w = 0.5 * h * gl.weights[q];
            const double m2 = m2a + (m2b - m2a) * theta, m3 = m3a + (m3b - m3a) * theta;
            const double k1 = greens::kernel_K1_lag(u, c).smooth, k2 = greens::kernel_K2_lag(u, c);
            i12 += w * k1 * m2;
            i13 += w * k1 * m3;
            i22 += w * k2 * m2;
            i23 += w * k2 * m3;
        }
    }
    return {-i12 + i23 + f0_term(0, y, t1, c), -i22 + i13 + f0_term(1, y, t1, c)};
}

std::pair<double, double> discrete_green_fluxes(int k, const VolterraSystem& s, const tau1::Tau1Solution& t1,
                                                const greens::KernelCache& c, int functional_nodes) {
    if (k < 0 || k > s.n || static_cast<int>(s.mu2.size()) != s.n + 1)
        throw OutOfDomain("node index outside the solved grid");
    const double h = s.h, rho = c.rho(), y = k * h;
    const double g = std::pow(h, 1.0 - rho) / std::tgamma(2.0 - rho);
    double i12 = 0.0, i13 = 0.0, i22 = 0.0, i23 = 0.0;
    for (int cell = 0; cell < k; ++cell) {
        const int j = k - 1 - cell;
        const double m2 = 0.5 * (s.mu2[cell] + s.mu2[cell + 1]), m3 = 0.5 * (s.mu3[cell] + s.mu3[cell + 1]);
        const double lag = (j + 0.5) * h;
        const double a = g * (std::pow(j + 1.0, 1.0 - rho) - std::pow(double(j), 1.0 - rho)) +
                         h * greens::kernel_K1_lag(lag, c).smooth;
        const double b = h * greens::kernel_K2_lag(lag, c);
        i12 += a * m2;
        i13 += a * m3;
        i22 += b * m2;
        i23 += b * m3;
    }
    return {-i12 + i23 + f0_term(0, y, t1, c, functional_nodes), -i22 + i13 + f0_term(1, y, t1, c, functional_nodes)};
}

CrossRoute cross_route(const VolterraSystem& s, const ProblemSpec& spec, const tau1::Tau1Solution& t1,
                       const greens::KernelCache& c, int functional_nodes) {
    if (static_cast<int>(s.mu2.size()) != s.n + 1) throw DegenerateGrid("system has not been solved");
    CrossRoute r;
    for (int k = 0; k <= s.n; ++k) {
        const double y = k * s.h;
        const auto [g2, g3] = discrete_green_fluxes(k, s, t1, c, functional_nodes);
        const double h2 = s.mu2[k] + remainder(y, spec, t1);
        const double h3 = -s.mu3[k] + spec.phi2.d(0.5 * y);
        r.nu2 = std::max(r.nu2, std::fabs(g2 - h2));
        r.nu3 = std::max(r.nu3, std::fabs(g3 - h3));
    }
    return r;
}

std::pair<double, double> apply_operator(double y, const std::function<double(double)>& mu2,
                                         const std::function<double(double)>& mu3, const greens::KernelCache& c) {
    const double m2 = mu2(y), m3 = mu3(y);
    if (y <= 0.0) return {m2, m3};
    const double rho = c.rho();
    // singular part: Gauss-Jacobi with weight (1+x)^{-rho}, lag = y (1+x)/2
    const auto& gj = quadrature::gauss_jacobi(40, 0.0, -rho);
    const double scale = std::pow(0.5 * y, 1.0 - rho) * specfun::recip_gamma(1.0 - rho);
    double s2 = 0.0, s3 = 0.0;
    for (std::size_t q = 0; q < gj.nodes.size(); ++q) {
        const double u = 0.5 * y * (1.0 + gj.nodes[q]);
        s2 += gj.weights[q] * mu2(y - u);
        s3 += gj.weights[q] * mu3(y - u);
    }
    s2 *= scale;
    s3 *= scale;
    // smooth parts: one Gauss pass, each kernel evaluated once per node
    const auto& gl = quadrature::gauss_legendre(10);
    const int panels = 16;
    const double width = y / panels;
    double k12 = 0.0, k13 = 0.0, k22 = 0.0, k23 = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double u = mid + 0.5 * width * gl.nodes[q];
            const double w = 0.5 * width * gl.weights[q];
            const double k1 = greens::kernel_K1_lag(u, c).smooth, k2 = greens::kernel_K2_lag(u, c);
            const double v2 = mu2(y - u), v3 = mu3(y - u);
            k12 += w * k1 * v2;
            k13 += w * k1 * v3;
            k22 += w * k2 * v2;
            k23 += w * k2 * v3;
        }
    }
    return {m2 + s2 + k12 - k23, m3 + s3 + k13 - k22};
}

}  // namespace mixfrac::volterra
