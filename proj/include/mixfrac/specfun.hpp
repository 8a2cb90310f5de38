#pragma once

#include <array>
#include <memory>
#include <vector>

namespace mixfrac::specfun {

/// 1/Gamma(x). Entire; exactly zero at the poles 0, -1, -2, ...
double recip_gamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

/// Parameters of the Wright-type function
///   e^{mu,delta}_{alpha,beta}(z) = sum_{n>=0} z^n / (Gamma(alpha n + mu) Gamma(delta - beta n)).
struct WrightParams {
    double alpha = 1.0;
    double beta = 0.5;
    double mu = 1.0;
    double delta = 0.5;
    double series_tol = 1e-14;
    double z_cutoff = 30.0;

    void validate() const;
};

/// How a single evaluation was obtained.
struct WrightDiagnostics {
    int terms = 0;
    bool extended_precision = false;  // fell back to 128-bit summation
    bool decayed = false;             // returned 0 from the decay bound
    double peak_term = 0.0;
    double error_bound = 0.0;         // rounding + truncation estimate
};

/// Direct series evaluation for z <= 0. Sums in 80-bit precision, escalates
/// to 128-bit when the cancellation estimate exceeds series_tol, and returns
/// 0 beyond z_cutoff or once the decay envelope is below series_tol.
double wright_e(const WrightParams& p, double z, WrightDiagnostics* diag = nullptr);

/// Leading-order magnitude envelope of e^{mu,delta}_{1,beta}(z) for z -> -inf,
/// inflated by a safety factor. Used as the tail bound of the cutoff.
double wright_decay_envelope(const WrightParams& p, double z);

/// Same function with the series coefficients tabulated once; this is the
/// evaluator used in kernel loops.
class WrightFunction {
public:
    explicit WrightFunction(const WrightParams& p);

    double operator()(double z, WrightDiagnostics* diag = nullptr) const;
    const WrightParams& params() const noexcept { return params_; }

private:
    struct Tables;
    WrightParams params_;
    std::shared_ptr<const Tables> tables_;
};

/// Absolute residuals of the four derivative / recurrence identities:
///   [0] d/dz e^{mu,delta}(z) = -1/(beta z) [e^{mu,delta-1}(z) + (1-delta) e^{mu,delta}(z)]
///       (analytic right-hand side vs Richardson central difference)
///   [1] e^{mu,delta-1}(z) + (1-delta) e^{mu,delta}(z) = -beta z e^{mu,delta-beta}(z)
///   [2] d/ds (s^{mu-1} e^{mu,delta}(c s^alpha)) = s^{mu-2} e^{mu-1,delta}(c s^alpha)
///   [3] d/ds (s^{delta-1} e^{mu,delta}(c s^{-beta})) = s^{delta-2} e^{mu,delta-1}(c s^{-beta})
/// Identities [2] and [3] are checked at s = |z| with c chosen so that the
/// Wright argument equals z. Requires z < 0.
std::array<double, 4> wright_identity_residuals(const WrightParams& p, double z);

/// E_lambda(z) = sum z^n / Gamma(lambda n + 1) for z <= 0, lambda in (0,1].
/// Series where it is well conditioned, otherwise the Laplace-type integral
/// representation of E_lambda(-x).
double mittag_leffler(double lambda, double z);

}  // namespace mixfrac::specfun
