#pragma once

#include <functional>
#include <vector>

#include "mixfrac/greens.hpp"

namespace mixfrac {

/// Solution of the first boundary problem in the unit square,
///   u = int_0^y G_x1(x,y;0,y1) tau2 dy1 - int_0^y G_x1(x,y;1,y1) tau3 dy1 + int_0^1 Gbar(x-x1,y) tau1 dx1,
/// with every image term rescaled to the Wright argument s: s = |x - b + 2n| (y-y1)^{-rho}
/// in the boundary integrals and x1 = x + 2n + y^rho s in the initial-data integral.
/// The Wright weights are tabulated once on fixed Gauss panels (graded toward s = 0);
/// only the clipped end panels are evaluated afresh.
class Omega0Representation {
public:
    using Trace = std::function<double(double)>;

    Omega0Representation(const greens::KernelCache& c, Trace tau1, Trace tau2, Trace tau3, int nodes = 10);

    double operator()(double x, double y) const;

    double boundary_term(int side, double x, double y) const;  // without the minus sign of side 1
    double initial_term(double x, double y) const;

private:
    struct WeightTable {
        std::function<double(double)> weight;
        std::vector<double> edges;
        std::vector<double> s, w;  // nodes and weight * Gauss weight, panel-major
        std::vector<double> v;     // weight at the nodes
        std::vector<double> bary;  // barycentric weights of the Gauss nodes
        int q = 8;
        double interpolate(int panel, double si) const;
        void build(std::function<double(double)> wfun, double s_max, int nodes);
        std::vector<double> sp;    // s^{-1/rho} at the nodes (boundary table only)
        /// int_lo^hi weight(s) f(s) ds; tabulated nodes call fi(index), clipped panels f(s).
        template <class FI, class F>
        double integrate(double lo, double hi, FI&& fi, F&& f) const;
    };

    const greens::KernelCache* c_;
    double rho_;
    Trace tau1_, tau2_, tau3_;
    WeightTable boundary_, initial_;
};

}  // namespace mixfrac
