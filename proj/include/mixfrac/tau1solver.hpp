#pragma once

#include <span>
#include <vector>

#include "mixfrac/problem.hpp"

namespace mixfrac::tau1 {

struct Tau1Config {
    /// Multiply the transmission coupling by Gamma(lambda). Off by default:
    /// with the Caputo trace in the gluing condition the factor is 1.
    bool gamma_factor_enabled = false;
    double quad_tol = 1e-12;
    int n = 256;  // uniform samples 0..n on [0,1]

    double coupling(double lambda) const;
};

/// Exact variation-of-parameters solution of
///   tau1'' + c tau1' = c phi1'((x+1)/2),  tau1(0) = a3(0)/(a1(0)+a2(0)),  tau1(1) = phi1(1).
/// Evaluable anywhere on [0,1]; `tau` and `dtau` hold the grid samples.
class Tau1Solution {
public:
    double value(double x) const;
    double derivative(double x) const;

    double c = 1.0;
    double h = 0.0;
    std::vector<double> tau, dtau;

private:
    friend Tau1Solution solve_tau1(const ProblemSpec&, const Tau1Config&);
    double forced(double x) const;  // F(x) = int_0^x e^{c(t-x)} g(t) dt

    ScalarFunction phi1_;
    double t0_ = 0.0, kappa_ = 0.0;
    int sub_ = 1;
    std::vector<double> F_;
};

Tau1Solution solve_tau1(const ProblemSpec& spec, const Tau1Config& cfg = {});

struct Tau1Residual {
    double ode = 0.0;  // max over interior nodes of the central-difference residual
    double bc0 = 0.0, bc1 = 0.0;
};

/// `tau` sampled on the uniform grid with tau.size()-1 cells.
Tau1Residual tau1_residual(std::span<const double> tau, const ProblemSpec& spec, const Tau1Config& cfg = {});

}  // namespace mixfrac::tau1
