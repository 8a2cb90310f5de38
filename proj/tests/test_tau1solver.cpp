#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/tau1solver.hpp"

using namespace mixfrac;
using namespace mixfrac::tau1;

namespace {

// phi1 constant beta, tau1(0) = alpha
ProblemSpec endpoints(double lambda, double alpha, double beta) {
    ProblemSpec p;
    p.lambda = lambda;
    p.a1 = ScalarFunction::constant(1.0);
    p.a2 = ScalarFunction::constant(1.0);
    p.a3 = ScalarFunction::constant(2.0 * alpha);
    p.phi1 = ScalarFunction::constant(beta);
    p.phi2 = ScalarFunction::constant(beta);
    return p;
}

ProblemSpec smooth(double lambda) {
    ProblemSpec p;
    p.lambda = lambda;
    p.a1 = ScalarFunction::make([](double t) { return 2.0 + t; }, [](double) { return 1.0; });
    p.a2 = ScalarFunction::make([](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); });
    p.a3 = ScalarFunction::constant(1.5);
    p.phi1 = ScalarFunction::make([](double x) { return std::sin(3.0 * x); }, [](double x) { return 3.0 * std::cos(3.0 * x); });
    p.phi2 = ScalarFunction::make([](double y) { return std::sin(3.0) + y; }, [](double) { return 1.0; });
    return p;
}

}  // namespace

TEST_CASE("coupling factor") {
    Tau1Config cfg;
    CHECK(cfg.coupling(0.5) == 1.0);
    cfg.gamma_factor_enabled = true;
    CHECK(cfg.coupling(0.5) == doctest::Approx(std::tgamma(0.5)));
    CHECK(cfg.coupling(1.0) == doctest::Approx(1.0));
}

TEST_CASE("homogeneous closed form") {
    for (bool gf : {false, true}) {
        for (double lambda : {0.3, 0.5, 1.0}) {
            Tau1Config cfg;
            cfg.gamma_factor_enabled = gf;
            const double c = cfg.coupling(lambda);
            const double a = 0.7, b = -1.3;
            const auto s = solve_tau1(endpoints(lambda, a, b), cfg);
            for (double x = 0.0; x <= 1.0; x += 0.0625) {
                const double e = a + (b - a) * (1.0 - std::exp(-c * x)) / (1.0 - std::exp(-c));
                CHECK(s.value(x) == doctest::Approx(e).epsilon(1e-13));
            }
            CHECK(s.value(0.0) == doctest::Approx(a).epsilon(1e-14));
            CHECK(s.value(1.0) == doctest::Approx(b).epsilon(1e-14));
        }
    }
}

TEST_CASE("classical value at lambda = 1") {
    const auto s = solve_tau1(endpoints(1.0, 0.0, 1.0));
    CHECK(s.value(0.5) == doctest::Approx(0.6224593).epsilon(1e-7));
    CHECK(s.tau[s.tau.size() / 2] == doctest::Approx(0.6224593312018546).epsilon(1e-13));
}

TEST_CASE("linear data give tau1 = x") {
    for (bool gf : {false, true}) {
        Tau1Config cfg;
        cfg.gamma_factor_enabled = gf;
        const auto s = solve_tau1(linear_problem(0.4), cfg);
        for (std::size_t k = 0; k < s.tau.size(); ++k) {
            CHECK(std::fabs(s.tau[k] - k * s.h) <= 1e-12);
            CHECK(std::fabs(s.dtau[k] - 1.0) <= 1e-12);
        }
        CHECK(s.value(0.3141) == doctest::Approx(0.3141).epsilon(1e-12));
    }
}

TEST_CASE("solution satisfies the ODE, boundary values, and derivative consistency") {
    for (double lambda : {0.25, 0.75}) {
        const auto p = smooth(lambda);
        double prev = 0.0;
        for (int n : {64, 128, 256}) {
            Tau1Config cfg;
            cfg.n = n;
            const auto s = solve_tau1(p, cfg);
            const auto r = tau1_residual(s.tau, p, cfg);
            CHECK(r.bc0 <= cfg.quad_tol);
            CHECK(r.bc1 <= cfg.quad_tol);
            CHECK(r.ode <= 50.0 / (n * n));
            if (prev > 0.0) CHECK(r.ode / prev == doctest::Approx(0.25).epsilon(0.1));
            prev = r.ode;
            // derivative agrees with the value by central differences
            const double e = 1e-5;
            for (double x : {0.1, 0.5, 0.9})
                CHECK(std::fabs((s.value(x + e) - s.value(x - e)) / (2 * e) - s.derivative(x)) <= 1e-8);
        }
    }
}

TEST_CASE("constant data have zero residual") {
    const auto p = endpoints(0.5, 2.0, 2.0);
    const auto s = solve_tau1(p);
    const auto r = tau1_residual(s.tau, p);
    CHECK(r.ode <= 1e-14);
    CHECK(r.bc0 <= 1e-14);
    CHECK(r.bc1 <= 1e-14);
}

TEST_CASE("residual detects a perturbation") {
    const auto p = smooth(0.5);
    Tau1Config cfg;
    const auto s = solve_tau1(p, cfg);
    const double base = tau1_residual(s.tau, p, cfg).ode;
    for (double eps : {1e-2, 1e-4}) {
        auto t = s.tau;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double x = k * s.h;
            t[k] += eps * x * (1.0 - x);
        }
        const auto r = tau1_residual(t, p, cfg);
        CHECK(r.ode >= eps - base);
        CHECK(r.bc0 <= 1e-14);
    }
}

TEST_CASE("errors") {
    auto p = endpoints(0.5, 1.0, 1.0);
    p.a2 = ScalarFunction::constant(-1.0);
    CHECK_THROWS_AS(solve_tau1(p), DegenerateCoefficients);
    Tau1Config cfg;
    cfg.n = 1;
    CHECK_THROWS_AS(solve_tau1(endpoints(0.5, 1.0, 1.0), cfg), DegenerateGrid);
}
