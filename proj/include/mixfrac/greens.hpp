#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "mixfrac/specfun.hpp"

namespace mixfrac::greens {

enum class KernelKind { G, Gbar, GbarX0, GbarX1, Gx1_0, Gx1_1, K1, K2, kCount };

const char* kind_name(KernelKind k);

/// Wright evaluators for one lambda plus the image-truncation policy and the
/// worst tail bound seen per kernel kind. Setup is single-threaded; the tail
/// report is guarded so evaluations may run concurrently afterwards.
class KernelCache {
public:
    explicit KernelCache(double lambda, int n_images = 5, double series_tol = 1e-14);

    double lambda() const noexcept { return lambda_; }
    double rho() const noexcept { return rho_; }
    int n_images() const noexcept { return n_images_; }
    double series_tol() const noexcept { return series_tol_; }

    // e^{1,delta}_{1,rho} for the deltas the kernels need
    const specfun::WrightFunction& e_rho() const { return *e_rho_; }          // delta = rho      (G)
    const specfun::WrightFunction& e_one_minus_rho() const { return *e_1mr_; }  // delta = 1 - rho  (Gbar, K1, K2)
    const specfun::WrightFunction& e_zero() const { return *e_0_; }           // delta = 0        (G_x1)
    const specfun::WrightFunction& e_one_minus_lambda() const { return *e_1ml_; }  // Gbar_x traces
    const specfun::WrightFunction& e_minus_rho() const { return *e_mr_; }     // dK/dy1

    void record_tail(KernelKind k, double bound) const;
    double worst_tail(KernelKind k) const;

private:
    double lambda_, rho_;
    int n_images_;
    double series_tol_;
    std::unique_ptr<specfun::WrightFunction> e_rho_, e_1mr_, e_0_, e_1ml_, e_mr_;
    mutable std::mutex mutex_;
    mutable std::array<double, static_cast<int>(KernelKind::kCount)> tails_{};
};

/// G(x, y; x1, y1), two-sided image sum truncated adaptively.
double green_eval(double x, double y, double x1, double y1, const KernelCache& c, double* tail = nullptr);

/// Gbar(x - x1, y) = 1/Gamma(1-lambda) int_0^y y1^{-lambda} G(x,y;x1,y1) dy1 by
/// double-singular quadrature; at lambda = 1 the limit G(x, y; x1, 0).
double gbar_eval(double x, double x1, double y, const KernelCache& c);

/// Closed form of the same kernel obtained by evaluating the y1-integral term-wise
/// (Laplace convolution of the Wright kernels):
///   Gbar = y^{-rho}/2 sum_n [e^{1,1-rho}(-|x-x1+2n|/y^rho) - e^{1,1-rho}(-|x+x1+2n|/y^rho)].
double gbar_closed(double x, double x1, double y, const KernelCache& c, double* tail = nullptr);

/// dG/dx1 at x1 = boundary (0 or 1).
double gx1_eval(double x, double y, int boundary, double y1, const KernelCache& c, double* tail = nullptr);

struct K1Split {
    double singular = 0.0;  // (y-y1)^{-rho} / Gamma(1-rho)
    double smooth = 0.0;    // image rings n != 0
    double total() const noexcept { return singular + smooth; }
};

K1Split kernel_K1(double y, double y1, const KernelCache& c);
double kernel_K2(double y, double y1, const KernelCache& c);

/// The same kernels as functions of the lag delta = y - y1 > 0.
K1Split kernel_K1_lag(double delta, const KernelCache& c);
double kernel_K2_lag(double delta, const KernelCache& c);

/// d/dy1 of K1 and K2 (the kernels of the form with the derivative on the kernel).
double kernel_K1_dy1(double y, double y1, const KernelCache& c);
double kernel_K2_dy1(double y, double y1, const KernelCache& c);

/// x-derivative of Gbar(x - x1, y) at the observation boundary x = side (0 or 1).
double gbar_x_trace(int side, double x1, double y, const KernelCache& c, double* tail = nullptr);

/// Trace functionals of tau1 entering the boundary fluxes:
///   side 0: F0 = int_0^1 Gbar_x(-x1,y) tau1 dx1 - K1(y,0) tau1(0) + K2(y,0) tau1(1)
///   side 1: F1 = int_0^1 Gbar_x(1-x1,y) tau1 dx1 - K2(y,0) tau1(0) + K1(y,0) tau1(1)
/// The corner terms come from the y1 = 0 end of the integration by parts that moves
/// the derivative from the kernel onto tau2, tau3. Evaluated in subtracted form with
/// panels graded on the y^rho boundary-layer scale.
double trace_functional(int side, const std::function<double(double)>& tau1, double y, const KernelCache& c,
                        int nodes = 16);

/// K1 smooth part and K2 tabulated at midpoint lags (j + 1/2) h, j = 0..count-1.
struct LagTables {
    double h = 0.0;
    std::vector<double> k1_smooth;
    std::vector<double> k2;
};

LagTables build_lag_tables(double h, int count, const KernelCache& c);

}  // namespace mixfrac::greens
