#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/hyperbolic.hpp"

using namespace mixfrac;
using namespace mixfrac::hyperbolic;

namespace {

SampledTrace sample(double h, auto f) {
    const int n = static_cast<int>(std::lround(1.0 / h));
    std::vector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = f(k * h);
    return SampledTrace(h, std::move(v));
}

TraceTable table(double h, auto t1, auto n1, auto t2, auto n2, auto t3, auto n3) {
    TraceTable t;
    t.h = h;
    t.tau1 = sample(h, t1);
    t.nu1 = sample(h, n1);
    t.tau2 = sample(h, t2);
    t.nu2 = sample(h, n2);
    t.tau3 = sample(h, t3);
    t.nu3 = sample(h, n3);
    return t;
}

auto c(double v) {
    return [v](double) { return v; };
}

}  // namespace

TEST_CASE("SampledTrace interpolation and integrals") {
    const auto s = sample(0.125, [](double x) { return 3.0 * x - 1.0; });
    CHECK(s(0.3) == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(s.integral(0.1, 0.7) == doctest::Approx(1.5 * (0.49 - 0.01) - 0.6).epsilon(1e-14));
    CHECK(s.integral(0.7, 0.1) == doctest::Approx(-(1.5 * (0.49 - 0.01) - 0.6)).epsilon(1e-14));
    CHECK_THROWS_AS(SampledTrace(0.0, {1.0, 2.0}), DegenerateGrid);
}

TEST_CASE("dalembert_eval examples") {
    const auto ones = table(1.0 / 64, c(1), c(0), c(1), c(0), c(1), c(0));
    for (auto [d, x, y] : {std::tuple{Domain::Omega1, 0.5, -0.2}, {Domain::Omega2, -0.2, 0.5}, {Domain::Omega3, 1.2, 0.4}})
        CHECK(dalembert_eval(d, ones, x, y) == doctest::Approx(1.0).epsilon(1e-14));
    const auto lin = table(1.0 / 64, [](double s) { return s; }, c(0), c(0), c(0), c(0), c(1));
    for (double x : {0.2, 0.5, 0.8})
        for (double y : {0.0, -0.1, -0.19}) CHECK(dalembert_eval(Domain::Omega1, lin, x, y) == doctest::Approx(x));
    for (double x : {1.0, 1.1, 1.3})
        CHECK(dalembert_eval(Domain::Omega3, lin, x, 0.5) == doctest::Approx(x - 1.0).scale(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(dalembert_eval(Domain::Omega1, lin, 0.1, -0.3), OutOfDomain);
    CHECK_THROWS_AS(dalembert_eval(Domain::Omega3, lin, 0.9, 0.3), OutOfDomain);
    CHECK_THROWS_AS(dalembert_eval(Domain::Omega0, lin, 0.5, 0.5), OutOfDomain);
}

TEST_CASE("trace_nu1 and trace_nu3 examples") {
    // u = x
    CHECK(trace_nu1(1.0, [](double) { return 1.0; }, 0.4) == 0.0);
    CHECK(trace_nu1(0.0, [](double) { return 0.0; }, 0.4) == 0.0);
    CHECK(trace_nu1(2.0 * 0.3, [](double) { return 0.0; }, 0.3) == doctest::Approx(-0.6));
    CHECK(trace_nu3(0.0, [](double) { return 1.0; }, 0.7) == 1.0);
    CHECK(trace_nu3(0.0, [](double) { return 0.0; }, 0.7) == 0.0);
    CHECK(trace_nu3(1.0, [](double) { return 0.0; }, 0.7) == -1.0);
    const auto v = trace_nu1(std::vector<double>{1.0, 1.0, 1.0}, [](double x) { return 2.0 * x; }, 0.5);
    CHECK(v[2] == doctest::Approx(1.0));
}

TEST_CASE("char_trace examples") {
    const auto ones = table(1.0 / 64, c(1), c(0), c(1), c(0), c(1), c(0));
    for (double t : {0.0, 0.2, 0.5}) {
        CHECK(char_trace(Characteristic::AC, ones, t) == doctest::Approx(1.0));
        CHECK(char_trace(Characteristic::AD, ones, t) == doctest::Approx(1.0));
    }
    // u = x: tau1 = s, nu1 = 0; tau2 = 0, nu2 = 1
    const auto lin = table(1.0 / 64, [](double s) { return s; }, c(0), c(0), c(1), c(1), c(1));
    for (double t : {0.0, 0.15, 0.5}) {
        CHECK(char_trace(Characteristic::AC, lin, t) == doctest::Approx(t).scale(1.0));
        CHECK(char_trace(Characteristic::AD, lin, t) == doctest::Approx(-t).scale(1.0));
    }
    const auto g = table(1.0 / 64, [](double s) { return std::cos(s); }, c(0), [](double s) { return s * s + 2; },
                         c(0), c(0), c(0));
    CHECK(char_trace(Characteristic::AC, g, 0.0) == doctest::Approx(1.0));
    CHECK(char_trace(Characteristic::AD, g, 0.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(char_trace(Characteristic::AC, g, 0.6), OutOfDomain);
}

TEST_CASE("traces are reproduced on the type-change lines") {
    const double h = 1.0 / 512;
    const auto tau = [](double s) { return std::sin(2.0 * s) + s * s; };
    const auto nu = [](double s) { return std::cos(3.0 * s); };
    const auto t = table(h, tau, nu, tau, nu, tau, nu);
    const double e = 1e-4;
    for (double s : {0.2, 0.5, 0.7}) {
        CHECK(dalembert_eval(Domain::Omega1, t, s, 0.0) == doctest::Approx(tau(s)).epsilon(1e-5));
        CHECK(dalembert_eval(Domain::Omega2, t, 0.0, s) == doctest::Approx(tau(s)).epsilon(1e-5));
        CHECK(dalembert_eval(Domain::Omega3, t, 1.0, s) == doctest::Approx(tau(s)).epsilon(1e-5));
        // one-sided derivatives into each triangle, O(h) tolerance
        const double dy1 = (dalembert_eval(Domain::Omega1, t, s, 0.0) - dalembert_eval(Domain::Omega1, t, s, -e)) / e;
        const double dx2 = (dalembert_eval(Domain::Omega2, t, 0.0, s) - dalembert_eval(Domain::Omega2, t, -e, s)) / e;
        const double dx3 = (dalembert_eval(Domain::Omega3, t, 1.0 + e, s) - dalembert_eval(Domain::Omega3, t, 1.0, s)) / e;
        CHECK(std::fabs(dy1 - nu(s)) <= 5e-3);
        CHECK(std::fabs(dx2 - nu(s)) <= 5e-3);
        CHECK(std::fabs(dx3 - nu(s)) <= 5e-3);
    }
}

TEST_CASE("characteristic conditions fix the sign and prime conventions") {
    const double h = 1.0 / 1024;
    // any phi1 and tau1 with tau1(1) = phi1(1); nu1 from trace_nu1
    const auto phi1 = [](double x) { return std::exp(x) - x * x; };
    const auto dphi1 = [](double x) { return std::exp(x) - 2.0 * x; };
    const auto tau1 = [&](double s) { return std::sin(s) + phi1(1.0) - std::sin(1.0); };
    const auto dtau1 = [](double s) { return std::cos(s); };
    const auto phi2 = [](double y) { return 1.0 + y * y * y; };
    const auto dphi2 = [](double y) { return 3.0 * y * y; };
    const auto tau3 = [&](double s) { return phi2(0.0) + s * std::cos(s); };
    const auto dtau3 = [](double s) { return std::cos(s) - s * std::sin(s); };
    TraceTable t;
    t.h = h;
    t.tau1 = sample(h, tau1);
    t.nu1 = sample(h, [&](double s) { return trace_nu1(dtau1(s), dphi1, s); });
    t.tau3 = sample(h, tau3);
    t.nu3 = sample(h, [&](double s) { return trace_nu3(dtau3(s), dphi2, s); });
    for (double x = 0.5; x <= 1.0; x += 0.05)
        CHECK(std::fabs(dalembert_eval(Domain::Omega1, t, x, x - 1.0) - phi1(x)) <= 1e-6);
    for (double x = 1.0; x <= 1.5; x += 0.05)
        CHECK(std::fabs(dalembert_eval(Domain::Omega3, t, x, x - 1.0) - phi2(x - 1.0)) <= 1e-6);
}

TEST_CASE("wave_residual") {
    const auto ones = table(1.0 / 64, c(1), c(0), c(1), c(0), c(1), c(0));
    CHECK(std::fabs(wave_residual(Domain::Omega1, ones, 0.5, -0.2, 1e-2)) <= 1e-12);
    const auto lin = table(1.0 / 64, [](double s) { return 2 * s + 1; }, [](double s) { return s; },
                           [](double s) { return 1 - s; }, c(2), c(3), [](double s) { return -s; });
    CHECK(std::fabs(wave_residual(Domain::Omega1, lin, 0.5, -0.2, 1e-2)) <= 1e-10);
    CHECK(std::fabs(wave_residual(Domain::Omega2, lin, -0.2, 0.5, 1e-2)) <= 1e-10);
    CHECK(std::fabs(wave_residual(Domain::Omega3, lin, 1.2, 0.5, 1e-2)) <= 1e-10);
    const auto cub = table(1.0 / 256, [](double s) { return s * s * s; }, [](double s) { return s * s; },
                           [](double s) { return s * s * s; }, [](double s) { return s * s; },
                           [](double s) { return s * s * s; }, [](double s) { return s * s; });
    for (double hf : {1e-2, 5e-3}) {
        CHECK(std::fabs(wave_residual(Domain::Omega1, cub, 0.5, -0.2, hf)) <= 1e-4);
        CHECK(std::fabs(wave_residual(Domain::Omega2, cub, -0.2, 0.5, hf)) <= 1e-4);
        CHECK(std::fabs(wave_residual(Domain::Omega3, cub, 1.2, 0.5, hf)) <= 1e-4);
    }
    CHECK_THROWS_AS(wave_residual(Domain::Omega1, cub, 0.5, -0.499, 1e-2), OutOfDomain);
}
