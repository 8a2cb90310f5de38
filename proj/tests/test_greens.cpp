#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

#include "mixfrac/errors.hpp"
#include "mixfrac/greens.hpp"
#include "mixfrac/specfun.hpp"

using namespace mixfrac;
using namespace mixfrac::greens;

namespace {

const double kPi = std::numbers::pi;

double heat_green(double x, double y, double x1, double y1) {
    const double d = y - y1;
    double s = 0.0;
    for (int n = -30; n <= 30; ++n) {
        const double a = x - x1 + 2.0 * n, b = x + x1 + 2.0 * n;
        s += std::exp(-a * a / (4.0 * d)) - std::exp(-b * b / (4.0 * d));
    }
    return s / (2.0 * std::sqrt(kPi * d));
}

double integrate(auto f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-12);
}

}  // namespace

TEST_CASE("G vanishes on the source boundary") {
    for (double lambda : {0.2, 0.5, 0.8, 1.0}) {
        const KernelCache c(lambda);
        for (double x : {0.1, 0.5, 0.93})
            for (double y : {0.2, 1.0})
                for (double y1 : {0.0, 0.1, 0.19}) {
                    CHECK(std::fabs(green_eval(x, y, 0.0, y1, c)) <= 1e-12);
                    CHECK(std::fabs(green_eval(x, y, 1.0, y1, c)) <= 1e-12);
                }
    }
}

TEST_CASE("G at lambda = 1 is the heat kernel") {
    const KernelCache c(1.0);
    CHECK(green_eval(0.3, 0.5, 0.4, 0.1, c) == doctest::Approx(heat_green(0.3, 0.5, 0.4, 0.1)).epsilon(1e-12));
    for (double x : {0.05, 0.5, 0.77})
        for (double x1 : {0.2, 0.6})
            CHECK(green_eval(x, 0.9, x1, 0.3, c) == doctest::Approx(heat_green(x, 0.9, x1, 0.3)).epsilon(1e-12));
    CHECK_THROWS_AS(green_eval(0.3, 0.5, 0.4, 0.5, c), DegenerateTime);
}

TEST_CASE("increasing n_images stays within the recorded tail bound") {
    for (double lambda : {0.1, 0.5, 1.0}) {
        const KernelCache a(lambda, 1), b(lambda, 20);
        for (double x : {0.2, 0.7})
            for (double y1 : {0.0, 0.5}) {
                double tail = 0.0;
                const double va = green_eval(x, 1.0, 0.4, y1, a, &tail);
                const double vb = green_eval(x, 1.0, 0.4, y1, b);
                CHECK(std::fabs(va - vb) <= tail + 1e-15 * std::fabs(vb));
                const double ka = kernel_K2(1.0, y1, a), kb = kernel_K2(1.0, y1, b);
                CHECK(std::fabs(ka - kb) <= a.worst_tail(KernelKind::K2) + 1e-15 * std::fabs(kb));
            }
    }
}

TEST_CASE("Gbar: quadrature form, closed form and limits") {
    SUBCASE("vanishes at x = 0") {
        const KernelCache c(0.5);
        for (double x1 : {0.1, 0.5, 0.9}) CHECK(std::fabs(gbar_eval(0.0, x1, 0.7, c)) <= 1e-12);
    }
    SUBCASE("lambda = 0.5 at (0.5, 0.5, 0.25) against tanh-sinh") {
        const KernelCache c(0.5);
        const double v = gbar_eval(0.5, 0.5, 0.25, c);
        // G depends on y - y1 only; integrate the half next to y1 = y in the lag so it stays exact
        const double near0 =
            integrate([&](double y1) { return std::pow(y1, -0.5) * green_eval(0.5, 0.25, 0.5, y1, c); }, 0.0, 0.125);
        const double neary = integrate(
            [&](double d) { return std::pow(0.25 - d, -0.5) * green_eval(0.5, d, 0.5, 0.0, c); }, 0.0, 0.125);
        const double ref = (near0 + neary) / std::tgamma(0.5);
        CHECK(v >= 0.0);
        CHECK(v == doctest::Approx(ref).epsilon(1e-8));
    }
    SUBCASE("term-wise closed form agrees with the quadrature") {
        for (double lambda : {0.2, 0.5, 0.8}) {
            const KernelCache c(lambda);
            for (double x : {0.1, 0.5})
                for (double x1 : {0.3, 0.55})
                    for (double y : {0.05, 1.0})
                        CHECK(gbar_closed(x, x1, y, c) ==
                              doctest::Approx(gbar_eval(x, x1, y, c)).epsilon(1e-8).scale(1.0));
        }
    }
    SUBCASE("lambda -> 1 approaches G(x, y; x1, 0)") {
        const double target = heat_green(0.3, 0.6, 0.45, 0.0);
        const double e99 = std::fabs(gbar_eval(0.3, 0.45, 0.6, KernelCache(0.99)) - target);
        const double e999 = std::fabs(gbar_eval(0.3, 0.45, 0.6, KernelCache(0.999)) - target);
        CHECK(e999 < e99);
        CHECK(e999 < 1e-2);
        CHECK(gbar_eval(0.3, 0.45, 0.6, KernelCache(1.0)) == doctest::Approx(target).epsilon(1e-12));
        CHECK(gbar_closed(0.3, 0.45, 0.6, KernelCache(1.0)) == doctest::Approx(target).epsilon(1e-12));
    }
}

TEST_CASE("G_x1 on the boundaries") {
    SUBCASE("one-sided difference, lambda = 0.5") {
        const KernelCache c(0.5);
        for (double x : {0.2, 0.5, 0.8})
            for (double y1 : {0.0, 0.3}) {
                const double g = gx1_eval(x, 1.0, 0, y1, c);
                const double e1 = 1e-4, e2 = 5e-5;
                const double d1 = std::fabs((green_eval(x, 1.0, e1, y1, c) - green_eval(x, 1.0, 0.0, y1, c)) / e1 - g);
                const double d2 = std::fabs((green_eval(x, 1.0, e2, y1, c) - green_eval(x, 1.0, 0.0, y1, c)) / e2 - g);
                CHECK(d1 <= 1e-2 * std::max(1.0, std::fabs(g)));
                CHECK(d2 <= 0.6 * d1 + 1e-9);  // O(eps)
                const double g1 = gx1_eval(x, 1.0, 1, y1, c);
                const double f1 = (green_eval(x, 1.0, 1.0, y1, c) - green_eval(x, 1.0, 1.0 - e2, y1, c)) / e2;
                CHECK(std::fabs(f1 - g1) <= 1e-2 * std::max(1.0, std::fabs(g1)));
            }
    }
    SUBCASE("lambda = 1 closed form") {
        const KernelCache c(1.0);
        for (double x : {0.1, 0.6})
            for (double d : {0.05, 0.5}) {
                double ref = 0.0;
                for (int n = -30; n <= 30; ++n) {
                    const double a = x + 2.0 * n;
                    ref += a * std::exp(-a * a / (4.0 * d));
                }
                ref /= 2.0 * std::sqrt(kPi) * std::pow(d, 1.5);
                CHECK(gx1_eval(x, 1.0, 0, 1.0 - d, c) == doctest::Approx(ref).epsilon(1e-11));
            }
    }
    SUBCASE("reflection") {
        for (double lambda : {0.3, 0.7, 1.0}) {
            const KernelCache c(lambda);
            for (double x : {0.15, 0.5, 0.85})
                for (double y1 : {0.0, 0.4})
                    CHECK(gx1_eval(x, 0.9, 1, y1, c) ==
                          doctest::Approx(-gx1_eval(1.0 - x, 0.9, 0, y1, c)).epsilon(1e-13).scale(1e-12));
        }
    }
}

TEST_CASE("K1 and K2") {
    SUBCASE("K1 smooth part is negligible at short lags") {
        // At lambda = 0.5 a lag of 1e-3 only reaches argument -2/1e-3^{1/4} = -11.2, where the
        // image ring is still ~2e-5; the decay regime proper starts around lag 1e-6.
        const KernelCache c(0.5);
        const auto k = kernel_K1(1.0, 1.0 - 1e-3, c);
        specfun::WrightParams p;
        p.beta = 0.25;
        p.delta = 0.75;
        const double direct = 2.0 * std::pow(1e-3, -0.25) * specfun::wright_e(p, -2.0 / std::pow(1e-3, 0.25));
        CHECK(k.smooth == doctest::Approx(direct).epsilon(1e-6));
        CHECK(k.singular == doctest::Approx(std::pow(1e-3, -0.25) / std::tgamma(0.75)).epsilon(1e-14));
        CHECK(std::fabs(kernel_K1_lag(1e-6, c).smooth) <= 1e-12);
        CHECK(std::fabs(kernel_K1(1.0, 1.0 - 1e-3, KernelCache(1.0)).smooth) <= 1e-12);
    }
    SUBCASE("K2 vanishes as y1 -> y") {
        const KernelCache c(0.5);
        double prev = kernel_K2(1.0, 0.9, c);
        for (double d : {1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
            const double v = kernel_K2(1.0, 1.0 - d, c);
            CHECK(std::fabs(v) <= std::fabs(prev) + 1e-300);
            prev = v;
        }
        CHECK(std::fabs(prev) <= 1e-12);
    }
    SUBCASE("lambda = 1 Gaussian reduction") {
        const KernelCache c(1.0);
        double s = 0.0;
        for (int n = -20; n <= 20; ++n) s += std::exp(-double(n) * n);
        CHECK(kernel_K1(1.0, 0.0, c).total() == doctest::Approx(s / std::sqrt(kPi)).epsilon(1e-13));
        double s2 = 0.0;
        for (int n = -20; n <= 20; ++n) s2 += std::exp(-(2.0 * n + 1) * (2.0 * n + 1) / 4.0);
        CHECK(kernel_K2(1.0, 0.0, c) == doctest::Approx(s2 / std::sqrt(kPi)).epsilon(1e-13));
    }
    SUBCASE("cached evaluators agree with direct summation") {
        for (double lambda : {0.3, 0.8}) {
            const KernelCache c(lambda);
            specfun::WrightParams p;
            p.beta = lambda / 2;
            p.delta = 1.0 - p.beta;
            for (double d : {0.02, 0.3, 1.0}) {
                double k1 = 0.0, k2 = 0.0;
                for (int n = -30; n <= 30; ++n) {
                    k1 += specfun::wright_e(p, -2.0 * std::abs(n) / std::pow(d, p.beta));
                    k2 += specfun::wright_e(p, -std::fabs(2.0 * n + 1) / std::pow(d, p.beta));
                }
                CHECK(kernel_K1_lag(d, c).total() == doctest::Approx(k1 / std::pow(d, p.beta)).epsilon(1e-12));
                CHECK(kernel_K2_lag(d, c) == doctest::Approx(k2 / std::pow(d, p.beta)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("lag tables") {
        const KernelCache c(0.6);
        const auto t = build_lag_tables(0.05, 20, c);
        for (int j = 0; j < 20; ++j) {
            CHECK(t.k1_smooth[j] == doctest::Approx(kernel_K1(1.0, 1.0 - (j + 0.5) * 0.05, c).smooth).epsilon(1e-13));
            CHECK(t.k2[j] == doctest::Approx(kernel_K2(1.0, 1.0 - (j + 0.5) * 0.05, c)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(kernel_K1(0.5, 0.5, KernelCache(0.5)), DegenerateTime);
    CHECK_THROWS_AS(kernel_K2(0.5, 0.7, KernelCache(0.5)), DegenerateTime);
}

TEST_CASE("observation-boundary traces of Gbar_x") {
    SUBCASE("term-wise derivative matches a central difference of Gbar") {
        for (double lambda : {0.4, 1.0}) {
            const KernelCache c(lambda);
            const double h = 1e-5;
            for (double x1 : {0.2, 0.6})
                for (double y : {0.1, 0.8}) {
                    const double fd0 = (gbar_closed(h, x1, y, c) - gbar_closed(-h, x1, y, c)) / (2 * h);
                    CHECK(gbar_x_trace(0, x1, y, c) == doctest::Approx(fd0).epsilon(1e-6));
                    const double fd1 = (gbar_closed(1 + h, x1, y, c) - gbar_closed(1 - h, x1, y, c)) / (2 * h);
                    CHECK(gbar_x_trace(1, x1, y, c) == doctest::Approx(fd1).epsilon(1e-6));
                }
        }
    }
    SUBCASE("integral of the trace kernel equals K1(y,0) - K2(y,0)") {
        for (double lambda : {0.3, 0.6, 1.0}) {
            const KernelCache c(lambda);
            for (double y : {0.01, 0.3, 1.0}) {
                const double i0 = trace_functional(0, [](double) { return 0.0; }, y, c);
                CHECK(i0 == 0.0);
                // int Gbar_x(-x1, y) dx1 via the functional applied to tau1 = 1 - plus corner terms
                const double k = kernel_K1(y, 0.0, c).total() - kernel_K2(y, 0.0, c);
                const double direct = integrate([&](double x1) { return gbar_x_trace(0, x1, y, c); }, 0.0, 1.0);
                CHECK(direct == doctest::Approx(k).epsilon(1e-9));
            }
        }
    }
    SUBCASE("constants and linear identities of the trace functionals") {
        for (double lambda : {0.2, 0.5, 0.9, 1.0}) {
            const KernelCache c(lambda);
            for (double y : {0.001, 0.05, 0.5, 1.0}) {
                CHECK(std::fabs(trace_functional(0, [](double) { return 1.0; }, y, c)) <= 1e-12);
                CHECK(std::fabs(trace_functional(1, [](double) { return 1.0; }, y, c)) <= 1e-12);
                CHECK(trace_functional(0, [](double x) { return x; }, y, c) == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(trace_functional(1, [](double x) { return x; }, y, c) == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
    SUBCASE("trace functionals tend to the end slopes of tau1 as y -> 0") {
        const KernelCache c(0.6);
        const auto tau = [](double x) { return std::sin(2.0 * x) + x * x; };
        // the approach is O(y^rho)
        const double e1 = std::fabs(trace_functional(0, tau, 1e-5, c) - 2.0);
        const double e2 = std::fabs(trace_functional(0, tau, 1e-10, c) - 2.0);
        CHECK(e2 < 0.1 * e1);
        CHECK(e2 < 1e-2);
        const double slope1 = 2.0 * std::cos(2.0) + 2.0;
        CHECK(trace_functional(1, tau, 1e-12, c) == doctest::Approx(slope1).epsilon(1e-2));
    }
}

TEST_CASE("integration by parts: derivative on the kernel vs derivative on the density") {
    const auto tau = [](double s) { return std::cos(2.0 * s) + s; };
    const auto dtau = [](double s) { return -2.0 * std::sin(2.0 * s) + 1.0; };
    for (double lambda : {0.3, 0.7, 1.0}) {
        const KernelCache c(lambda);
        for (double y : {0.2, 1.0}) {
            // K1: finite-part form with the y1 = y end subtracted
            const double on_kernel =
                integrate([&](double y1) { return (tau(y1) - tau(y)) * kernel_K1_dy1(y, y1, c); }, 0.0, y) -
                tau(y) * kernel_K1(y, 0.0, c).total();
            const double on_density =
                -tau(0.0) * kernel_K1(y, 0.0, c).total() -
                integrate([&](double y1) { return dtau(y1) * kernel_K1(y, y1, c).total(); }, 0.0, y);
            CHECK(on_kernel == doctest::Approx(on_density).epsilon(1e-8));
            // K2 vanishes at y1 = y, so no subtraction is needed
            const double k2_kernel = integrate([&](double y1) { return tau(y1) * kernel_K2_dy1(y, y1, c); }, 0.0, y);
            const double k2_density = -tau(0.0) * kernel_K2(y, 0.0, c) -
                                      integrate([&](double y1) { return dtau(y1) * kernel_K2(y, y1, c); }, 0.0, y);
            CHECK(k2_kernel == doctest::Approx(k2_density).epsilon(1e-8));
        }
    }
}
