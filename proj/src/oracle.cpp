#include "mixfrac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixfrac/errors.hpp"
#include "mixfrac/greens.hpp"
#include "mixfrac/quadrature.hpp"
#include "mixfrac/representation.hpp"
#include "mixfrac/specfun.hpp"

namespace mixfrac::oracle {

void FdConfig::validate() const {
    if (nx < 3 || ny < 3) throw ValidationError("FD grid needs at least 3 nodes per direction");
    if (substeps < 1) throw ValidationError("substeps must be positive");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in (0, 1]");
}

double FdConfig::effective_grade() const {
    return grade > 0.0 ? grade : std::clamp((2.0 - lambda) / lambda, 2.0, 4.0);
}

FdField fd_first_bvp(const BoundaryData& data, const FdConfig& cfg) {
    cfg.validate();
    const int nx = cfg.nx, ny = (cfg.ny - 1) * cfg.substeps + 1;  // ny: march nodes
    const double lambda = cfg.lambda, g = cfg.effective_grade();
    FdField f;
    f.x.resize(nx);
    f.y.resize(ny);
    for (int i = 0; i < nx; ++i) f.x[i] = static_cast<double>(i) / (nx - 1);
    for (int j = 0; j < ny; ++j) f.y[j] = std::pow(static_cast<double>(j) / (ny - 1), g);
    f.u.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    auto u = [&](int i, int j) -> double& { return f.u[static_cast<std::size_t>(j) * nx + i]; };
    for (int i = 0; i < nx; ++i) u(i, 0) = data.tau1(f.x[i]);

    const double hx2 = 1.0 / ((nx - 1.0) * (nx - 1.0));
    const double gam = std::tgamma(2.0 - lambda);
    // L1 weight of increment k (cell [y_{k-1}, y_k]) at time y_m
    auto weight = [&](int m, int k) {
        const double dk = f.y[k] - f.y[k - 1];
        if (lambda == 1.0) return k == m ? 1.0 / dk : 0.0;
        const double a = std::pow(f.y[m] - f.y[k - 1], 1.0 - lambda);
        const double b = k == m ? 0.0 : std::pow(f.y[m] - f.y[k], 1.0 - lambda);
        return (a - b) / (gam * dk);
    };

    const int n = nx - 2;  // interior unknowns
    std::vector<double> rhs(n), cp(n), dp(n), hist(n);
    std::vector<double> w(ny);
    for (int m = 1; m < ny; ++m) {
        for (int k = 1; k <= m; ++k) w[k] = weight(m, k);
        const double bm = w[m];
        // (u_{i-1} - 2u_i + u_{i+1})/hx^2 - bm u_i = sum_{k<m} w_k (u^k - u^{k-1}) - bm u^{m-1}
        for (int i = 1; i <= n; ++i) {
            double h = 0.0;
            for (int k = 1; k < m; ++k) h += w[k] * (u(i, k) - u(i, k - 1));
            hist[i - 1] = h - bm * u(i, m - 1);
        }
        const double left = data.tau2(f.y[m]), right = data.tau3(f.y[m]);
        u(0, m) = left;
        u(nx - 1, m) = right;
        const double diag = -2.0 / hx2 - bm, off = 1.0 / hx2;
        for (int i = 0; i < n; ++i) rhs[i] = hist[i];
        rhs[0] -= off * left;
        rhs[n - 1] -= off * right;
        // Thomas sweep
        double piv = diag;
        if (piv == 0.0) throw LinearSolveFailure("zero pivot in the FD step at y = " + std::to_string(f.y[m]));
        cp[0] = off / piv;
        dp[0] = rhs[0] / piv;
        for (int i = 1; i < n; ++i) {
            piv = diag - off * cp[i - 1];
            if (piv == 0.0) throw LinearSolveFailure("zero pivot in the FD step at y = " + std::to_string(f.y[m]));
            cp[i] = off / piv;
            dp[i] = (rhs[i] - off * dp[i - 1]) / piv;
        }
        u(n, m) = dp[n - 1];
        for (int i = n - 2; i >= 0; --i) u(i + 1, m) = dp[i] - cp[i] * u(i + 2, m);
    }
    if (cfg.substeps == 1) return f;
    FdField out;
    out.x = f.x;
    for (int j = 0; j < cfg.ny; ++j) {
        const int m = j * cfg.substeps;
        out.y.push_back(f.y[m]);
        out.u.insert(out.u.end(), f.u.begin() + static_cast<std::ptrdiff_t>(m) * nx,
                     f.u.begin() + static_cast<std::ptrdiff_t>(m + 1) * nx);
    }
    return out;
}

double eigenmode(double lambda, int k, double x, double y) {
    const double kp = k * std::numbers::pi;
    return specfun::mittag_leffler(lambda, -kp * kp * std::pow(y, lambda)) * std::sin(kp * x);
}

std::vector<double> sine_coefficients(const Trace& tau1, int terms) {
    // 64 Gauss panels of 16 points
    const auto& gl = quadrature::gauss_legendre(16);
    const int panels = 64;
    std::vector<double> b(terms, 0.0);
    for (int p = 0; p < panels; ++p)
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double s = (p + 0.5 * (gl.nodes[q] + 1.0)) / panels;
            const double w = gl.weights[q] * tau1(s) / panels;  // 2 * (1/2) / panels
            for (int k = 1; k <= terms; ++k) b[k - 1] += w * std::sin(k * std::numbers::pi * s);
        }
    return b;
}

double sine_series_solution(const std::vector<double>& coefficients, double lambda, double x, double y) {
    double u = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        if (std::fabs(coefficients[k]) > 1e-15) u += coefficients[k] * eigenmode(lambda, static_cast<int>(k) + 1, x, y);
    return u;
}

double sine_series_solution(const Trace& tau1, double lambda, double x, double y, int terms) {
    return sine_series_solution(sine_coefficients(tau1, terms), lambda, x, y);
}

double compare_representation(const BoundaryData& data, const FdConfig& cfg, int representation_nodes) {
    const auto fd = fd_first_bvp(data, cfg);
    const greens::KernelCache cache(cfg.lambda);
    const Omega0Representation rep(cache, data.tau1, data.tau2, data.tau3, representation_nodes);
    double worst = 0.0;
    for (int j = 1; j < cfg.ny; ++j)
        for (int i = 1; i + 1 < cfg.nx; ++i)
            worst = std::max(worst, std::fabs(rep(fd.x[i], fd.y[j]) - fd.at(i, j)));
    return worst;
}

}  // namespace mixfrac::oracle
