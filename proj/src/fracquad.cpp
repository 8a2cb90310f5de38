#include "mixfrac/fracquad.hpp"

#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/quadrature.hpp"

namespace mixfrac::fracquad {

namespace {

/// (j+1)^p - j^p without cancellation for large j.
double power_step(int j, double p) {
    if (j == 0) return 1.0;
    const double jd = j;
    return std::pow(jd, p) * std::expm1(p * std::log1p(1.0 / jd));
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in (0, 1]");
}

}  // namespace

std::vector<double> caputo_l1(std::span<const double> g, double h, double lambda) {
    if (!(h > 0.0)) throw DegenerateGrid("caputo_l1: step must be positive");
    if (g.size() < 2) throw DegenerateGrid("caputo_l1: need at least two samples");
    check_lambda(lambda);
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    if (lambda == 1.0) {
        out[0] = (g[1] - g[0]) / h;
        for (std::size_t k = 1; k < n; ++k) out[k] = (g[k] - g[k - 1]) / h;
        return out;
    }
    const double p = 1.0 - lambda;
    std::vector<double> b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = power_step(static_cast<int>(j), p);
    const double scale = 1.0 / (std::tgamma(2.0 - lambda) * std::pow(h, lambda));
    for (std::size_t m = 1; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += b[m - 1 - k] * (g[k + 1] - g[k]);
        out[m] = scale * s;
    }
    return out;
}

std::vector<double> caputo_l1_graded(std::span<const double> g, std::span<const double> t, double lambda) {
    if (g.size() != t.size() || g.size() < 2) throw DegenerateGrid("caputo_l1_graded: size mismatch");
    check_lambda(lambda);
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1])) throw DegenerateGrid("caputo_l1_graded: grid must increase");
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    const double p = 1.0 - lambda;
    const double c = 1.0 / std::tgamma(2.0 - lambda);
    out[0] = lambda == 1.0 ? (g[1] - g[0]) / (t[1] - t[0]) : 0.0;
    if (lambda == 1.0) {
        for (std::size_t m = 1; m < n; ++m) out[m] = (g[m] - g[m - 1]) / (t[m] - t[m - 1]);
        return out;
    }
    for (std::size_t m = 1; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double slope = (g[k + 1] - g[k]) / (t[k + 1] - t[k]);
            s += slope * (std::pow(t[m] - t[k], p) - std::pow(t[m] - t[k + 1], p));
        }
        out[m] = c * s;
    }
    return out;
}

double abel_lag_weight(int j, double h, double rho) {
    const double p = 1.0 - rho;
    return std::pow(h, p) * power_step(j, p) / p;
}

SingularWeights abel_weights(int n, double h, double rho) {
    if (n < 1) throw DegenerateGrid("abel_weights: need n >= 1");
    if (!(h > 0.0)) throw DegenerateGrid("abel_weights: step must be positive");
    if (!(rho >= 0.0 && rho < 1.0)) throw ValidationError("abel_weights: rho must lie in [0, 1)");
    SingularWeights w{n, h, rho, std::vector<double>(n)};
    for (int k = 0; k < n; ++k) w.weights[k] = abel_lag_weight(n - 1 - k, h, rho);
    return w;
}

namespace {

/// int over [0, d] in the distance u from a singular end, of u^{expo} s(u) du.
/// Geometric panels toward u = 0; the innermost carries the Jacobi weight.
template <class S>
double graded_half(const S& smooth, double d, double expo, int nodes, int levels) {
    const auto& jac = quadrature::gauss_jacobi(nodes, 0.0, expo);
    const auto& leg = quadrature::gauss_legendre(nodes);
    double e = d * std::ldexp(1.0, -levels);
    double total = 0.0;
    {
        const double half = 0.5 * e;
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) s += jac.weights[i] * smooth(half * (1.0 + jac.nodes[i]));
        total += std::pow(half, 1.0 + expo) * s;
    }
    for (int level = 0; level < levels; ++level) {
        const double lo = e, hi = 2.0 * e;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double u = mid + half * leg.nodes[i];
            s += leg.weights[i] * std::pow(u, expo) * smooth(u);
        }
        total += half * s;
        e = hi;
    }
    return total;
}


void check_double_singular(double y, double lambda, double rho) {
    if (!(y > 0.0)) throw ValidationError("quad_double_singular: y must be positive");
    if (!(lambda >= 0.0 && lambda < 1.0)) throw ValidationError("quad_double_singular: lambda must lie in [0,1)");
    if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("quad_double_singular: rho must lie in (0,1]");
}

double double_singular_pass(const std::function<double(double, double)>& F, double y, double lambda, double rho, int nodes,
                            int levels) {
    const double d = 0.5 * y;
    // left: u = y1, weight y1^{-lambda}; right: u = y - y1, weight u^{rho-1}
    const double left =
        graded_half([&](double u) { return std::pow(y - u, rho - 1.0) * F(u, y - u); }, d, -lambda, nodes, levels);
    const double right = graded_half(
        [&](double u) {
            const double y1 = y - u;
            return std::pow(y1, -lambda) * F(y1, u);
        },
        d, rho - 1.0, nodes, levels);
    return left + right;
}

}  // namespace

double quad_double_singular_fixed(const std::function<double(double, double)>& F, double y, double lambda,
                                  double rho, int nodes, int grading_levels) {
    check_double_singular(y, lambda, rho);
    if (nodes < 1 || grading_levels < 0) throw ValidationError("quad_double_singular: bad rule size");
    return double_singular_pass(F, y, lambda, rho, nodes, grading_levels);
}

double quad_double_singular(const std::function<double(double)>& F, double y, double lambda, double rho,
                            const DoubleSingularOptions& opt) {
    return quad_double_singular([&](double y1, double) { return F(y1); }, y, lambda, rho, opt);
}

double quad_double_singular(const std::function<double(double, double)>& F, double y, double lambda, double rho,
                            const DoubleSingularOptions& opt) {
    check_double_singular(y, lambda, rho);
    int nodes = opt.min_nodes;
    double prev = double_singular_pass(F, y, lambda, rho, nodes, opt.grading_levels);
    while (nodes < opt.max_nodes) {
        nodes *= 2;
        const double cur = double_singular_pass(F, y, lambda, rho, nodes, opt.grading_levels);
        if (!std::isfinite(cur)) throw QuadratureFailure("quad_double_singular: non-finite integrand");
        if (std::fabs(cur - prev) <= std::max(opt.rel_tol * std::fabs(cur), opt.abs_tol)) return cur;
        prev = cur;
    }
    throw QuadratureFailure("quad_double_singular: refinement stalled before tolerance");
}

}  // namespace mixfrac::fracquad
