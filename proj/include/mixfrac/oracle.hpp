#pragma once

#include <functional>
#include <vector>

namespace mixfrac::oracle {

using Trace = std::function<double(double)>;

/// u(x,0) = tau1(x), u(0,y) = tau2(y), u(1,y) = tau3(y).
struct BoundaryData {
    Trace tau1, tau2, tau3;
};

/// Implicit L1 in y on a graded mesh, second-order central differences in x on a
/// uniform mesh. The march takes `substeps` graded steps per output interval, where
/// the output rows are y_j = (j/(ny-1))^grade; grade <= 0 picks clamp((2-lambda)/lambda, 2, 4).
struct FdConfig {
    int nx = 129, ny = 129;
    double lambda = 0.5;
    double grade = 0.0;
    int substeps = 16;

    void validate() const;
    double effective_grade() const;
};

struct FdField {
    std::vector<double> x, y;
    std::vector<double> u;  // row-major in y: u[j * nx + i] = u(x_i, y_j)

    double at(int i, int j) const { return u[static_cast<std::size_t>(j) * x.size() + i]; }
};

/// u_xx = D^lambda_y u in the unit square, marched in y. Throws LinearSolveFailure
/// on a vanishing pivot.
FdField fd_first_bvp(const BoundaryData& data, const FdConfig& cfg);

/// sum_k b_k E_lambda(-k^2 pi^2 y^lambda) sin(k pi x), b_k the sine coefficients of
/// tau1 (zero lateral data); for lambda = 1 the classical heat series.
double sine_series_solution(const Trace& tau1, double lambda, double x, double y, int terms = 32);

/// b_k = 2 int_0^1 tau1 sin(k pi x) dx, k = 1..terms.
std::vector<double> sine_coefficients(const Trace& tau1, int terms);
double sine_series_solution(const std::vector<double>& coefficients, double lambda, double x, double y);

/// E_lambda(-k^2 pi^2 y^lambda) sin(k pi x).
double eigenmode(double lambda, int k, double x, double y);

/// max |representation - fd| over interior nodes of the FD grid, both fed the same data.
double compare_representation(const BoundaryData& data, const FdConfig& cfg, int representation_nodes = 20);

}  // namespace mixfrac::oracle
