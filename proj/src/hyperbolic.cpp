#include "mixfrac/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixfrac/errors.hpp"

namespace mixfrac::hyperbolic {

SampledTrace::SampledTrace(double h, std::vector<double> values) : h_(h), v_(std::move(values)) {
    if (!(h > 0.0) || v_.size() < 2) throw DegenerateGrid("trace needs h > 0 and two samples");
    cum_.resize(v_.size());
    cum_[0] = 0.0;
    for (std::size_t k = 1; k < v_.size(); ++k) cum_[k] = cum_[k - 1] + 0.5 * h_ * (v_[k - 1] + v_[k]);
}

double SampledTrace::operator()(double s) const {
    const double last = static_cast<double>(v_.size() - 1);
    const double pos = std::clamp(s / h_, 0.0, last);
    const std::size_t k = std::min(static_cast<std::size_t>(pos), v_.size() - 2);
    const double w = pos - static_cast<double>(k);
    return (1.0 - w) * v_[k] + w * v_[k + 1];
}

double SampledTrace::primitive(double s) const {
    const double last = static_cast<double>(v_.size() - 1);
    const double pos = std::clamp(s / h_, 0.0, last);
    const std::size_t k = std::min(static_cast<std::size_t>(pos), v_.size() - 2);
    const double w = pos - static_cast<double>(k);
    // integral over [s_k, s_k + w h] of the linear interpolant
    return cum_[k] + h_ * w * (v_[k] + 0.5 * w * (v_[k + 1] - v_[k]));
}

double SampledTrace::integral(double a, double b) const { return primitive(b) - primitive(a); }

const char* domain_name(Domain d) {
    switch (d) {
        case Domain::Omega0: return "Omega0";
        case Domain::Omega1: return "Omega1";
        case Domain::Omega2: return "Omega2";
        case Domain::Omega3: return "Omega3";
    }
    return "?";
}

bool inside(Domain d, double x, double y, double tol) {
    switch (d) {
        case Domain::Omega0: return x >= -tol && x <= 1 + tol && y >= -tol && y <= 1 + tol;
        case Domain::Omega1: return y <= tol && x + y >= -tol && x - y <= 1 + tol;
        case Domain::Omega2: return x <= tol && y + x >= -tol && y - x <= 1 + tol;
        case Domain::Omega3: return x >= 1 - tol && y - (x - 1) >= -tol && y + (x - 1) <= 1 + tol;
    }
    return false;
}

namespace {

void require_inside(Domain d, double x, double y) {
    if (d == Domain::Omega0) throw OutOfDomain("d'Alembert forms cover the hyperbolic triangles only");
    if (!inside(d, x, y, 1e-12))
        throw OutOfDomain(std::string("(") + std::to_string(x) + ", " + std::to_string(y) + ") is outside " +
                          domain_name(d));
}

}  // namespace

double dalembert_eval(Domain d, const TraceTable& t, double x, double y) {
    require_inside(d, x, y);
    switch (d) {
        case Domain::Omega1:
            return 0.5 * (t.tau1(x + y) + t.tau1(x - y) + t.nu1.integral(x - y, x + y));
        case Domain::Omega2:
            return 0.5 * (t.tau2(y + x) + t.tau2(y - x) + t.nu2.integral(y - x, y + x));
        case Domain::Omega3: {
            const double r = x - 1.0;
            return 0.5 * (t.tau3(y + r) + t.tau3(y - r)) + 0.5 * t.nu3.integral(y - r, y + r);
        }
        default: break;
    }
    throw OutOfDomain("unreachable");
}

double trace_nu1(double tau1_prime, const std::function<double(double)>& phi1_prime, double s) {
    return -tau1_prime + phi1_prime(0.5 * (s + 1.0));
}

std::vector<double> trace_nu1(const std::vector<double>& tau1_prime, const std::function<double(double)>& phi1_prime,
                              double h) {
    std::vector<double> out(tau1_prime.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = trace_nu1(tau1_prime[k], phi1_prime, k * h);
    return out;
}

double trace_nu3(double tau3_prime, const std::function<double(double)>& phi2_prime, double s) {
    return -tau3_prime + phi2_prime(0.5 * s);
}

std::vector<double> trace_nu3(const std::vector<double>& tau3_prime, const std::function<double(double)>& phi2_prime,
                              double h) {
    std::vector<double> out(tau3_prime.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = trace_nu3(tau3_prime[k], phi2_prime, k * h);
    return out;
}

double char_trace(Characteristic which, const TraceTable& t, double s) {
    if (!(s >= 0.0 && s <= 0.5)) throw OutOfDomain("characteristic parameter must lie in [0, 1/2]");
    if (which == Characteristic::AC) return 0.5 * (t.tau1(0.0) + t.tau1(2.0 * s) - t.nu1.integral(0.0, 2.0 * s));
    return 0.5 * (t.tau2(0.0) + t.tau2(2.0 * s) - t.nu2.integral(0.0, 2.0 * s));
}

double wave_residual(Domain d, const TraceTable& t, double x, double y, double h_fd) {
    if (!(h_fd > 0.0)) throw DegenerateGrid("wave_residual needs h_fd > 0");
    for (auto [dx, dy] : {std::pair{h_fd, 0.0}, {-h_fd, 0.0}, {0.0, h_fd}, {0.0, -h_fd}})
        if (!inside(d, x + dx, y + dy, 1e-12)) throw OutOfDomain("stencil leaves the triangle");
    const double c = dalembert_eval(d, t, x, y);
    const double uxx = dalembert_eval(d, t, x + h_fd, y) + dalembert_eval(d, t, x - h_fd, y) - 2.0 * c;
    const double uyy = dalembert_eval(d, t, x, y + h_fd) + dalembert_eval(d, t, x, y - h_fd) - 2.0 * c;
    return (uxx - uyy) / (h_fd * h_fd);
}

}  // namespace mixfrac::hyperbolic
