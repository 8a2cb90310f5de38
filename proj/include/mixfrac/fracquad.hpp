#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mixfrac::fracquad {

/// L1 approximation of the Caputo derivative of order lambda at every node of
/// a uniform grid y_k = k h. lambda = 1 gives the backward difference.
/// Node 0 carries no history: it reports 0 for lambda < 1 and the forward
/// difference for lambda = 1.
std::vector<double> caputo_l1(std::span<const double> g, double h, double lambda);

/// L1 on an arbitrary increasing grid t (t[0] is the lower terminal).
/// Used by verification code on graded meshes only.
std::vector<double> caputo_l1_graded(std::span<const double> g, std::span<const double> t, double lambda);

/// Product-integration weights for int_0^{y_n} (y_n - s)^{-rho} m(s) ds with m
/// constant on each cell [y_k, y_{k+1}].
struct SingularWeights {
    int n = 0;
    double h = 0.0;
    double rho = 0.0;
    std::vector<double> weights;  // weights[k] pairs with cell k, k = 0..n-1
};

SingularWeights abel_weights(int n, double h, double rho);

/// Cell weight for a lag of j cells: [(j+1)^{1-rho} - j^{1-rho}] h^{1-rho}/(1-rho),
/// evaluated without cancellation. abel_weights(n,...).weights[k] == abel_lag_weight(n-1-k,...).
double abel_lag_weight(int j, double h, double rho);

struct DoubleSingularOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int min_nodes = 4;
    int max_nodes = 256;      // per panel, doubled until the tolerance is met
    int grading_levels = 40;  // geometric panels toward each singular end (ratio 2)
};

/// int_0^y y1^{-lambda} (y - y1)^{rho-1} F(y1) dy1 for lambda in [0,1), rho in (0,1].
/// Split at y/2; each half is graded geometrically toward its singular end and the
/// end panel uses a Gauss-Jacobi rule carrying the exact singular weight.
double quad_double_singular(const std::function<double(double)>& F, double y, double lambda, double rho,
                            const DoubleSingularOptions& opt = {});

/// Same, with the integrand called as F(y1, y - y1) so that the lag is exact near y1 = y.
double quad_double_singular(const std::function<double(double, double)>& F, double y, double lambda, double rho,
                            const DoubleSingularOptions& opt = {});

/// One pass of the same rule with a fixed node count per panel (no refinement).
double quad_double_singular_fixed(const std::function<double(double, double)>& F, double y, double lambda,
                                  double rho, int nodes, int grading_levels = 40);

}  // namespace mixfrac::fracquad
