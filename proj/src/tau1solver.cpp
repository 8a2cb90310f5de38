#include "mixfrac/tau1solver.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/quadrature.hpp"

namespace mixfrac::tau1 {

namespace {

constexpr int kOrder = 10;

// int_a^b e^{c(t-b)} g(t) dt on `sub` equal Gauss panels
double cell(const ScalarFunction& phi1, double c, double a, double b, int sub) {
    const auto g = [&](double t) { return std::exp(c * (t - b)) * phi1.d(0.5 * (t + 1.0)); };
    return quadrature::composite_gauss(g, a, b, sub, kOrder);
}

}  // namespace

double Tau1Config::coupling(double lambda) const { return gamma_factor_enabled ? std::tgamma(lambda) : 1.0; }

double Tau1Solution::forced(double x) const {
    const int n = static_cast<int>(F_.size()) - 1;
    x = std::clamp(x, 0.0, 1.0);
    const int k = std::min(static_cast<int>(x / h), n);
    const double xk = k * h;
    if (x == xk) return F_[k];
    return std::exp(-c * (x - xk)) * F_[k] + cell(phi1_, c, xk, x, sub_);
}

double Tau1Solution::value(double x) const {
    const double G = 2.0 * (phi1_((x + 1.0) * 0.5) - phi1_(0.5));
    return t0_ + kappa_ * -std::expm1(-c * x) / c + G - forced(x);
}

double Tau1Solution::derivative(double x) const { return kappa_ * std::exp(-c * x) + c * forced(x); }

Tau1Solution solve_tau1(const ProblemSpec& spec, const Tau1Config& cfg) {
    if (cfg.n < 2) throw DegenerateGrid("tau1 grid needs at least 2 cells");
    const double t0 = spec.tau1_at_zero();
    Tau1Solution s;
    s.c = cfg.coupling(spec.lambda);
    s.h = 1.0 / cfg.n;
    s.phi1_ = spec.phi1;
    s.t0_ = t0;

    const double decay = std::exp(-s.c * s.h);
    auto sweep = [&](int sub) {
        std::vector<double> F(cfg.n + 1, 0.0);
        for (int k = 0; k < cfg.n; ++k) F[k + 1] = decay * F[k] + cell(spec.phi1, s.c, k * s.h, (k + 1) * s.h, sub);
        return F;
    };
    // refine panels until the cumulative integral is stable
    auto F = sweep(1);
    for (int sub = 2;; sub *= 2) {
        auto F2 = sweep(sub);
        double diff = 0.0;
        for (int k = 0; k <= cfg.n; ++k) diff = std::max(diff, std::fabs(F2[k] - F[k]));
        F = std::move(F2);
        s.sub_ = sub;
        if (diff <= cfg.quad_tol) break;
        if (sub >= 1024) throw QuadratureFailure("tau1 forcing integral did not settle to quad_tol");
    }
    s.F_ = std::move(F);

    const double G1 = 2.0 * (spec.phi1(1.0) - spec.phi1(0.5));
    s.kappa_ = s.c * (spec.phi1(1.0) - t0 - G1 + s.F_.back()) / -std::expm1(-s.c);

    s.tau.resize(cfg.n + 1);
    s.dtau.resize(cfg.n + 1);
    for (int k = 0; k <= cfg.n; ++k) {
        s.tau[k] = s.value(k * s.h);
        s.dtau[k] = s.derivative(k * s.h);
    }
    return s;
}

Tau1Residual tau1_residual(std::span<const double> tau, const ProblemSpec& spec, const Tau1Config& cfg) {
    const int n = static_cast<int>(tau.size()) - 1;
    if (n < 2) throw DegenerateGrid("tau1 residual needs at least 2 cells");
    const double h = 1.0 / n;
    const double c = cfg.coupling(spec.lambda);
    Tau1Residual r;
    for (int k = 1; k < n; ++k) {
        const double x = k * h;
        const double d2 = (tau[k + 1] - 2.0 * tau[k] + tau[k - 1]) / (h * h);
        const double d1 = (tau[k + 1] - tau[k - 1]) / (2.0 * h);
        r.ode = std::max(r.ode, std::fabs(d2 + c * d1 - c * spec.phi1.d(0.5 * (x + 1.0))));
    }
    r.bc0 = std::fabs(tau[0] - spec.tau1_at_zero());
    r.bc1 = std::fabs(tau[n] - spec.phi1(1.0));
    return r;
}

}  // namespace mixfrac::tau1
