#include "mixfrac/problem.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mixfrac/errors.hpp"

namespace mixfrac {

namespace {

double interp(const std::vector<double>& t, const std::vector<double>& v, double x) {
    if (x <= t.front()) return v.front();
    if (x >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (x - t[k]) / (t[k + 1] - t[k]);
    return (1.0 - w) * v[k] + w * v[k + 1];
}

void check_finite(const ScalarFunction& f, const char* name, double lo, double hi) {
    if (!f.value || !f.derivative) throw ValidationError(std::string(name) + " is not set");
    for (int i = 0; i <= 200; ++i) {
        const double t = lo + (hi - lo) * i / 200.0;
        if (!std::isfinite(f(t)) || !std::isfinite(f.d(t)))
            throw ValidationError(std::string(name) + " is not finite at " + std::to_string(t));
    }
}

}  // namespace

ScalarFunction ScalarFunction::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }, std::to_string(c)};
}

ScalarFunction ScalarFunction::make(std::function<double(double)> f, std::function<double(double)> df,
                                    std::string description) {
    return {std::move(f), std::move(df), std::move(description)};
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> t, std::vector<double> values,
                                         std::vector<double> derivs, std::string description) {
    if (t.size() < 2 || values.size() != t.size() || derivs.size() != t.size())
        throw ValidationError("tabulated function needs matching samples (at least two)");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1])) throw ValidationError("tabulated function grid must increase");
    auto tt = std::make_shared<std::vector<double>>(std::move(t));
    auto vv = std::make_shared<std::vector<double>>(std::move(values));
    auto dd = std::make_shared<std::vector<double>>(std::move(derivs));
    return {[tt, vv](double x) { return interp(*tt, *vv, x); }, [tt, dd](double x) { return interp(*tt, *dd, x); },
            std::move(description)};
}

void ProblemSpec::validate() const {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in (0, 1]");
    check_finite(a1, "a1", 0.0, 0.5);
    check_finite(a2, "a2", 0.0, 0.5);
    check_finite(a3, "a3", 0.0, 0.5);
    check_finite(phi1, "phi1", 0.5, 1.0);
    check_finite(phi2, "phi2", 0.0, 0.5);
    // a1 must not vanish on [0, 1/2]: sample for zeros and sign changes
    double prev = a1(0.0);
    for (int i = 0; i <= 2000; ++i) {
        const double t = 0.5 * i / 2000.0;
        const double v = a1(t);
        if (v == 0.0 || (v > 0.0) != (prev > 0.0))
            throw DegenerateCoefficients("a1 vanishes on [0, 1/2] (near t = " + std::to_string(t) + ")");
        prev = v;
    }
    if (a1(0.0) + a2(0.0) == 0.0) throw DegenerateCoefficients("a1(0) + a2(0) = 0: tau1(0) is undefined");
    const double jump = phi1(1.0) - phi2(0.0);
    if (std::fabs(jump) > 1e-12 * std::max(1.0, std::fabs(phi1(1.0))))
        throw ValidationError("compatibility phi1(1) = phi2(0) violated by " + std::to_string(jump));
}

double ProblemSpec::tau1_at_zero() const {
    const double den = a1(0.0) + a2(0.0);
    if (den == 0.0) throw DegenerateCoefficients("a1(0) + a2(0) = 0: tau1(0) is undefined");
    return a3(0.0) / den;
}

ProblemSpec constant_problem(double lambda, double a1, double a2) {
    ProblemSpec p;
    p.lambda = lambda;
    p.a1 = ScalarFunction::constant(a1);
    p.a2 = ScalarFunction::constant(a2);
    p.a3 = ScalarFunction::constant(a1 + a2);
    p.phi1 = ScalarFunction::constant(1.0);
    p.phi2 = ScalarFunction::constant(1.0);
    return p;
}

ProblemSpec linear_problem(double lambda) {
    ProblemSpec p;
    p.lambda = lambda;
    p.a1 = ScalarFunction::constant(1.0);
    p.a2 = ScalarFunction::constant(1.0);
    p.a3 = ScalarFunction::constant(0.0);
    p.phi1 = ScalarFunction::make([](double x) { return x; }, [](double) { return 1.0; }, "x");
    p.phi2 = ScalarFunction::make([](double y) { return 1.0 + y; }, [](double) { return 1.0; }, "1+y");
    return p;
}

ProblemSpec zero_problem(double lambda) {
    ProblemSpec p;
    p.lambda = lambda;
    p.a1 = ScalarFunction::constant(1.0);
    p.a2 = ScalarFunction::constant(1.0);
    p.a3 = ScalarFunction::constant(0.0);
    p.phi1 = ScalarFunction::constant(0.0);
    p.phi2 = ScalarFunction::constant(0.0);
    return p;
}

}  // namespace mixfrac
