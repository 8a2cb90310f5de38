#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mixfrac/errors.hpp"
#include "mixfrac/specfun.hpp"

using namespace mixfrac::specfun;

namespace {

WrightParams wright(double beta, double mu, double delta) {
    WrightParams p;
    p.beta = beta;
    p.mu = mu;
    p.delta = delta;
    return p;
}

double gaussian_form(double z) { return std::exp(-z * z / 4.0) / std::sqrt(std::numbers::pi); }

}  // namespace

TEST_CASE("recip_gamma values and poles") {
    CHECK(recip_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(recip_gamma(0.0) == 0.0);
    CHECK(recip_gamma(-3.0) == 0.0);
    CHECK(recip_gamma(0.5) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("recip_gamma recurrence holds on [-20, 20]") {
    for (double x = -20.0; x <= 20.0; x += 0.173) {
        const double lhs = recip_gamma(x);
        const double rhs = x * recip_gamma(x + 1.0);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(lhs)));
    }
    for (int k = -20; k <= 0; ++k) {
        CHECK(recip_gamma(k) == 0.0);
        CHECK(k * recip_gamma(k + 1.0) == doctest::Approx(recip_gamma(k)).epsilon(1e-12));
    }
}

TEST_CASE("wright_e examples") {
    const auto p = wright(0.5, 1.0, 0.5);
    CHECK(wright_e(p, 0.0) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
    CHECK(wright_e(p, -1.0) == doctest::Approx(0.4393912894677224).epsilon(1e-12));
    WrightDiagnostics d;
    CHECK(wright_e(p, -20.0, &d) == 0.0);
    CHECK(d.decayed);
    CHECK(d.error_bound < 1e-30);
}

TEST_CASE("wright_e matches the Gaussian closed form at beta = 1/2") {
    const auto p = wright(0.5, 1.0, 0.5);
    for (double z = 0.0; z >= -8.0; z -= 0.25) {
        CHECK(std::fabs(wright_e(p, z) - gaussian_form(z)) <= 1e-10);
    }
}

TEST_CASE("wright_e against high-precision reference values") {
    // mpmath, 40 digits, 800 series terms.
    struct Ref {
        double beta, delta, z, value;
    };
    const Ref refs[] = {
        {0.25, 0.75, -3.0, 0.06192208425161672},
        {0.15, 0.85, -10.0, 3.821502466900526e-05},
        {0.4, 0.6, -7.0, 1.028196160541356e-04},
        {0.15, 0.15, -20.0, 7.415785840529982e-10},
        {0.25, 0.75, -12.0, 7.284317170210214e-07},
    };
    for (const auto& r : refs) {
        const double v = wright_e(wright(r.beta, 1.0, r.delta), r.z);
        CHECK(std::fabs(v - r.value) <= 1e-12);
    }
}

TEST_CASE("cached evaluator agrees with direct summation") {
    for (double beta : {0.15, 0.25, 0.4, 0.5}) {
        for (double delta : {1.0 - beta, beta, 1.0 - 2.0 * beta, 0.0}) {
            const auto p = wright(beta, 1.0, delta);
            const WrightFunction f(p);
            for (double z = 0.0; z >= -25.0; z -= 0.7) {
                CHECK(f(z) == doctest::Approx(wright_e(p, z)).epsilon(1e-13).scale(1.0));
            }
        }
    }
}

TEST_CASE("decay envelope dominates the function where the series is accurate") {
    for (double beta : {0.15, 0.25, 0.4, 0.5}) {
        for (double delta : {1.0 - beta, beta, 1.0, 1.0 - 2.0 * beta, 0.0, -beta}) {
            const auto p = wright(beta, 1.0, delta);
            for (double z = -3.0; z >= -14.0; z -= 0.5) {
                CHECK(std::fabs(wright_e(p, z)) <= wright_decay_envelope(p, z) + p.series_tol);
            }
        }
    }
}

TEST_CASE("no decay shortcut for mu != 1 (algebraic tail)") {
    // e^{2,delta}(z) = (e^{1,delta+beta}(z) - 1/Gamma(delta+beta)) / z
    const auto p2 = wright(0.25, 2.0, 0.5);
    const auto p1 = wright(0.25, 1.0, 0.75);
    for (double z : {-2.0, -8.0, -14.0}) {
        const double expect = (wright_e(p1, z) - recip_gamma(0.75)) / z;
        CHECK(wright_e(p2, z) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("tightening series_tol is monotone-stable") {
    for (double z : {-0.5, -2.0, -5.0, -9.0}) {
        auto p = wright(0.25, 1.0, 0.75);
        p.series_tol = 1e-10;
        const double a = wright_e(p, z);
        p.series_tol = 0.5e-10;
        const double b = wright_e(p, z);
        CHECK(std::fabs(a - b) <= 1e-10);
    }
}

TEST_CASE("derivative and recurrence identities") {
    SUBCASE("recurrence at rho = 0.5, delta = 1, z = -1") {
        const auto r = wright_identity_residuals(wright(0.5, 1.0, 1.0), -1.0);
        CHECK(r[1] <= 1e-9);
    }
    SUBCASE("z -> 0 limit of the recurrence") {
        for (double delta : {0.3, 0.75, 1.0, 1.5}) {
            const double v = recip_gamma(delta - 1.0) + (1.0 - delta) * recip_gamma(delta);
            CHECK(std::fabs(v) <= 1e-14);
        }
    }
    SUBCASE("full grid") {
        for (double rho : {0.15, 0.25, 0.4, 0.5}) {
            for (double delta : {1.0 - rho, rho, 1.0}) {
                for (double z = -0.1; z >= -6.0; z -= 0.37) {
                    const auto r = wright_identity_residuals(wright(rho, 1.0, delta), z);
                    for (double v : r) CHECK(v <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("mittag_leffler") {
    CHECK(mittag_leffler(1.0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(mittag_leffler(0.5, 0.0) == 1.0);
    // e * erfc(1)
    CHECK(mittag_leffler(0.5, -1.0) == doctest::Approx(0.4275835761558070).epsilon(1e-13));
    CHECK(mittag_leffler(0.5, -3.0) == doctest::Approx(0.17900115118138995).epsilon(1e-12));
    CHECK(mittag_leffler(0.3, -2.0) == doctest::Approx(0.29023222616787535).epsilon(1e-12));
    CHECK(mittag_leffler(0.8, -5.0) == doctest::Approx(0.05759538476215225).epsilon(1e-11));
    // E_{1/2}(-x) = exp(x^2) erfc(x) covers the integral branch.
    for (double x : {4.0, 6.0, 9.87}) {
        const double ref = std::exp(x * x) * std::erfc(x);
        CHECK(mittag_leffler(0.5, -x) == doctest::Approx(ref).epsilon(1e-11));
    }
}
