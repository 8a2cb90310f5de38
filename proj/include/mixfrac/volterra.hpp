#pragma once

#include <functional>
#include <vector>

#include "mixfrac/greens.hpp"
#include "mixfrac/hyperbolic.hpp"
#include "mixfrac/problem.hpp"
#include "mixfrac/tau1solver.hpp"

namespace mixfrac::volterra {

/// Boundary fluxes on x = 0 and x = 1 written through the Green functions,
///   nu2 = -int K1 mu2 + int K2 mu3 + F0[tau1]
///   nu3 = -int K2 mu2 + int K1 mu3 + F1[tau1],
/// equated with the hyperbolic side nu2 = mu2 + R, nu3 = -mu3 + phi2'(y/2), give
///   mu2 + int_0^y K1 mu2 - int_0^y K2 mu3 = f1 = F0[tau1] - R
///   mu3 + int_0^y K1 mu3 - int_0^y K2 mu2 = f2 = phi2'(y/2) - F1[tau1].

/// R(y) = B(y/2)(tau1'(y) - nu1(y)) + B'(y/2) P(y)/2 - A'(y/2), where B = a2/a1,
/// A = a3/a1, P(y) = tau1(0) + tau1(y) - int_0^y nu1: the non-local condition
/// differentiated along the characteristics, so that nu2 = tau2' + R.
double remainder(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1);

/// At y = 0 both use the limits F0 -> tau1'(0), F1 -> tau1'(1).
double rhs_f1(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1, const greens::KernelCache& c);
double rhs_f2(double y, const ProblemSpec& spec, const tau1::Tau1Solution& t1, const greens::KernelCache& c);

struct VolterraSystem {
    double lambda = 0.5;
    int n = 0;  // cells; nodes y_k = k h, k = 0..n
    double h = 0.0;
    std::vector<double> f1, f2;
    greens::LagTables lags;
    std::vector<double> singular;  // abel lag weights / Gamma(1 - rho)
    std::vector<double> mu2, mu3;
};

/// Kernel tables only; f1/f2 are filled by the caller or by build_system.
VolterraSystem make_system(int n, const greens::KernelCache& c);
VolterraSystem build_system(int n, const ProblemSpec& spec, const tau1::Tau1Solution& t1,
                            const greens::KernelCache& c);

/// March n = 1..N; each step a 2x2 solve. Density on a cell is the mean of its
/// end values; the singular part of K1 is integrated exactly, the smooth part of
/// K1 and K2 by the midpoint rule.
void solve_march(VolterraSystem& s);

/// Traces on AA0 and BB0 from the solved system (tau1 side resampled on the same grid).
hyperbolic::TraceTable recover_traces(const VolterraSystem& s, const ProblemSpec& spec,
                                      const tau1::Tau1Solution& t1);

/// The Green-route fluxes (nu2, nu3) at node k, with the integrals of the
/// piecewise-linear interpolant of mu evaluated independently of the march
/// (exact singular moments, Gauss on the smooth parts).
std::pair<double, double> green_route_fluxes(int k, const VolterraSystem& s, const tau1::Tau1Solution& t1,
                                             const greens::KernelCache& c);

/// The Green-route fluxes at node k under the march's own discrete rule (cell-mean
/// density, exact singular cell moments, midpoint smooth kernels), rebuilt without
/// the march tables and with F0/F1 re-integrated on `functional_nodes` Gauss points.
std::pair<double, double> discrete_green_fluxes(int k, const VolterraSystem& s, const tau1::Tau1Solution& t1,
                                                const greens::KernelCache& c, int functional_nodes = 24);

/// Max over the nodes of |nu2 (Green) - nu2 (hyperbolic)| and the same for nu3.
struct CrossRoute {
    double nu2 = 0.0, nu3 = 0.0;
};
CrossRoute cross_route(const VolterraSystem& s, const ProblemSpec& spec, const tau1::Tau1Solution& t1,
                       const greens::KernelCache& c, int functional_nodes = 24);

/// Forward map of the system applied to given mu2, mu3 at y (accurate quadrature);
/// used to manufacture right-hand sides with a known solution.
std::pair<double, double> apply_operator(double y, const std::function<double(double)>& mu2,
                                         const std::function<double(double)>& mu3, const greens::KernelCache& c);

}  // namespace mixfrac::volterra
