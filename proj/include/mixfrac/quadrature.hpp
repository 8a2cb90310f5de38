#pragma once

#include <vector>

namespace mixfrac::quadrature {

/// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b, a, b > -1 (Golub-Welsch).
/// Rules are cached; the returned reference stays valid for the program lifetime.
const GaussRule& gauss_jacobi(int n, double a, double b);

inline const GaussRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Composite Gauss-Legendre over [lo, hi] with `panels` equal panels of `order` nodes.
template <class F>
double composite_gauss(F&& f, double lo, double hi, int panels, int order = 8) {
    const GaussRule& r = gauss_legendre(order);
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double half = 0.5 * width;
        const double mid = a + half;
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
        total += half * s;
    }
    return total;
}

}  // namespace mixfrac::quadrature
