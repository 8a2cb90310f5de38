#pragma once

#include <functional>
#include <vector>

namespace mixfrac::hyperbolic {

/// Samples on the uniform grid s_k = k h of [0, 1], linear in between, with a
/// running integral of the interpolant.
class SampledTrace {
public:
    SampledTrace() = default;
    SampledTrace(double h, std::vector<double> values);

    double operator()(double s) const;
    /// Exact integral of the piecewise-linear interpolant over [a, b] (any order).
    double integral(double a, double b) const;
    double h() const noexcept { return h_; }
    const std::vector<double>& values() const noexcept { return v_; }
    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }

private:
    double primitive(double s) const;
    double h_ = 0.0;
    std::vector<double> v_;
    std::vector<double> cum_;
};

/// Traces on the type-change lines: AB (tau1, nu1), AA0 (tau2, nu2), BB0 (tau3, nu3),
/// plus the Volterra unknowns mu2 = tau2', mu3 = tau3'.
struct TraceTable {
    double h = 0.0;
    SampledTrace tau1, nu1, tau2, nu2, tau3, nu3, mu2, mu3;
};

enum class Domain { Omega0, Omega1, Omega2, Omega3 };

const char* domain_name(Domain d);

/// Point membership (closed triangles / square, small tolerance).
bool inside(Domain d, double x, double y, double tol = 1e-12);

/// d'Alembert solution in a characteristic triangle.
double dalembert_eval(Domain d, const TraceTable& t, double x, double y);

/// nu1(s) = -tau1'(s) + phi1'((s+1)/2)
double trace_nu1(double tau1_prime, const std::function<double(double)>& phi1_prime, double s);
std::vector<double> trace_nu1(const std::vector<double>& tau1_prime, const std::function<double(double)>& phi1_prime,
                              double h);

/// nu3(s) = -tau3'(s) + phi2'(s/2)
double trace_nu3(double tau3_prime, const std::function<double(double)>& phi2_prime, double s);
std::vector<double> trace_nu3(const std::vector<double>& tau3_prime, const std::function<double(double)>& phi2_prime,
                              double h);

enum class Characteristic { AC, AD };

/// u(t, -t) on AC or u(-t, t) on AD, t in [0, 1/2].
double char_trace(Characteristic which, const TraceTable& t, double s);

/// Five-point u_xx - u_yy of dalembert_eval at (x, y).
double wave_residual(Domain d, const TraceTable& t, double x, double y, double h_fd);

}  // namespace mixfrac::hyperbolic
