#include "mixfrac/representation.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/quadrature.hpp"

namespace mixfrac {

namespace {

// first s with a negligible Wright envelope
double weight_support(const specfun::WrightFunction& f) {
    const auto& p = f.params();
    double s = 1.0;
    while (s < p.z_cutoff && specfun::wright_decay_envelope(p, -s) > 1e-18) s += 0.5;
    return std::min(s, p.z_cutoff);
}

}  // namespace

void Omega0Representation::WeightTable::build(std::function<double(double)> wfun, double s_max, int nodes) {
    weight = std::move(wfun);
    q = nodes;
    edges.clear();
    for (int k = 30; k >= 1; --k) edges.push_back(0.25 * std::ldexp(1.0, -k));
    edges.insert(edges.begin(), 0.0);
    for (double e = 0.25; e < s_max; e += 0.25) edges.push_back(e);
    edges.push_back(s_max);
    const auto& gl = quadrature::gauss_legendre(q);
    s.clear();
    w.clear();
    v.clear();
    bary.resize(q);
    for (int i = 0; i < q; ++i)
        bary[i] = ((i % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - gl.nodes[i] * gl.nodes[i]) * gl.weights[i]);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]), mid = 0.5 * (edges[p + 1] + edges[p]);
        for (int i = 0; i < q; ++i) {
            const double si = mid + half * gl.nodes[i];
            const double wi = weight(si);
            s.push_back(si);
            v.push_back(wi);
            w.push_back(half * gl.weights[i] * wi);
        }
    }
}

double Omega0Representation::WeightTable::interpolate(int panel, double si) const {
    const double a = edges[panel], b = edges[panel + 1];
    const double t = (2.0 * si - a - b) / (b - a);
    const auto& gl = quadrature::gauss_legendre(q);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < q; ++i) {
        const double d = t - gl.nodes[i];
        if (d == 0.0) return v[panel * q + i];
        const double c = bary[i] / d;
        num += c * v[panel * q + i];
        den += c;
    }
    return num / den;
}

template <class FI, class F>
double Omega0Representation::WeightTable::integrate(double lo, double hi, FI&& fi, F&& f) const {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, edges.back());
    if (!(lo < hi)) return 0.0;
    const auto& gl = quadrature::gauss_legendre(q);
    // clipped panel: Gauss on the sub-interval, weight interpolated within its panel
    auto fresh = [&](int panel, double a, double b) {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double acc = 0.0;
        for (int i = 0; i < q; ++i) {
            const double si = mid + half * gl.nodes[i];
            acc += gl.weights[i] * interpolate(panel, si) * f(si);
        }
        return half * acc;
    };
    // panel p spans [edges[p], edges[p+1]]
    const int pl = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), lo) - edges.begin()) - 1;
    const int ph = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), hi) - edges.begin()) - 1;
    if (pl == ph) return fresh(pl, lo, hi);
    double acc = 0.0;
    acc += lo == edges[pl] ? 0.0 : fresh(pl, lo, edges[pl + 1]);
    const int first_full = lo == edges[pl] ? pl : pl + 1;
    const int last_full = hi == edges[ph + 1] ? ph : ph - 1;
    for (int p = first_full; p <= last_full; ++p)
        for (int i = p * q; i < (p + 1) * q; ++i) acc += w[i] * fi(i);
    if (hi != edges[ph + 1]) acc += fresh(ph, edges[ph], hi);
    return acc;
}

Omega0Representation::Omega0Representation(const greens::KernelCache& c, Trace tau1, Trace tau2, Trace tau3,
                                           int nodes)
    : c_(&c), rho_(c.rho()), tau1_(std::move(tau1)), tau2_(std::move(tau2)), tau3_(std::move(tau3)) {
    const auto& e0 = c.e_zero();
    const auto& e1 = c.e_one_minus_rho();
    boundary_.build([&e0](double s) { return e0(-s) / s; }, weight_support(e0), nodes);
    for (double si : boundary_.s) boundary_.sp.push_back(std::pow(si, -1.0 / rho_));
    initial_.build([&e1](double s) { return e1(-s); }, weight_support(e1), nodes);
}

double Omega0Representation::boundary_term(int side, double x, double y) const {
    if (y <= 0.0) return 0.0;
    const Trace& tr = side == 0 ? tau2_ : tau3_;
    const double xb = x - side;
    const double yr = std::pow(y, rho_);
    const double smax = boundary_.edges.back();
    const int nmax = static_cast<int>(std::ceil(0.5 * (smax * yr + 1.0))) + 1;
    const double inv = 1.0 / rho_;
    double total = 0.0;
    for (int n = -nmax; n <= nmax; ++n) {
        const double xn = xb + 2.0 * n;
        const double a = std::fabs(xn);
        if (a == 0.0) continue;  // observation point on the boundary itself
        const double lo = a / yr;
        if (lo >= smax) continue;
        // y - y1 = (a/s)^{1/rho}
        const double ap = std::pow(a, inv);
        const double part = boundary_.integrate(
            lo, smax, [&](int i) { return tr(y - ap * boundary_.sp[i]); },
            [&](double s) { return tr(y - std::pow(a / s, inv)); });
        total += (xn > 0 ? 1.0 : -1.0) * inv * part;
    }
    return total;
}

double Omega0Representation::initial_term(double x, double y) const {
    if (y <= 0.0) return tau1_(x);
    const double yr = std::pow(y, rho_);
    const double smax = initial_.edges.back();
    const int nmax = static_cast<int>(std::ceil(0.5 * (smax * yr + 2.0))) + 1;
    double total = 0.0;
    // int over s with x1 = centre + sign * yr * s restricted to x1 in [0,1], weight e(-|s|)
    auto image = [&](double centre, double sign) {
        // x1 in [0,1]  <=>  s in [(0-centre)/(sign yr), (1-centre)/(sign yr)]
        double lo = (0.0 - centre) / (sign * yr), hi = (1.0 - centre) / (sign * yr);
        if (lo > hi) std::swap(lo, hi);
        auto f = [&](double s) { return tau1_(centre + sign * yr * s); };
        auto g = [&](double s) { return tau1_(centre - sign * yr * s); };
        auto fi = [&](int i) { return f(initial_.s[i]); };
        auto gi = [&](int i) { return g(initial_.s[i]); };
        return initial_.integrate(std::max(lo, 0.0), hi, fi, f) + initial_.integrate(std::max(-hi, 0.0), -lo, gi, g);
    };
    for (int n = -nmax; n <= nmax; ++n) {
        // e(-|x - x1 + 2n| / yr): x1 = x + 2n + yr s;   e(-|x + x1 + 2n| / yr): x1 = -x - 2n + yr s
        total += image(x + 2.0 * n, 1.0) - image(-x - 2.0 * n, 1.0);
    }
    return 0.5 * total;
}

double Omega0Representation::operator()(double x, double y) const {
    if (x < -1e-12 || x > 1.0 + 1e-12 || y < -1e-12 || y > 1.0 + 1e-12)
        throw OutOfDomain("point outside the parabolic square");
    if (y <= 0.0) return tau1_(std::clamp(x, 0.0, 1.0));
    if (x <= 0.0) return tau2_(y);
    if (x >= 1.0) return tau3_(y);
    return boundary_term(0, x, y) - boundary_term(1, x, y) + initial_term(x, y);
}

}  // namespace mixfrac
