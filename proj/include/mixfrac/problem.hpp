#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mixfrac {

/// A scalar datum of the problem together with its derivative.
struct ScalarFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::string description;

    double operator()(double t) const { return value(t); }
    double d(double t) const { return derivative(t); }

    static ScalarFunction constant(double c);
    static ScalarFunction make(std::function<double(double)> f, std::function<double(double)> df,
                               std::string description = "<callable>");
    /// Sampled values and sampled derivatives on an increasing grid, both
    /// interpolated linearly (no spline fitting).
    static ScalarFunction tabulated(std::vector<double> t, std::vector<double> values, std::vector<double> derivs,
                                    std::string description = "<table>");
};

/// Data of the non-local problem: fractional order and the five coefficient /
/// boundary functions. a_i live on [0,1/2], phi1 on [1/2,1], phi2 on [0,1/2].
struct ProblemSpec {
    double lambda = 0.5;
    ScalarFunction a1, a2, a3, phi1, phi2;

    /// Throws ValidationError / DegenerateCoefficients on broken invariants.
    void validate() const;
    /// tau1(0) from the non-local condition at t = 0.
    double tau1_at_zero() const;
};

/// u = 1 and u = x as problem data (a1, a2 free where noted).
ProblemSpec constant_problem(double lambda, double a1 = 2.0, double a2 = 1.0);
ProblemSpec linear_problem(double lambda);
ProblemSpec zero_problem(double lambda);

}  // namespace mixfrac
