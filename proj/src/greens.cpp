#include "mixfrac/greens.hpp"

#include <algorithm>
#include <cmath>

#include "mixfrac/errors.hpp"
#include "mixfrac/fracquad.hpp"
#include "mixfrac/quadrature.hpp"

namespace mixfrac::greens {

namespace {

constexpr int kMaxRings = 400;

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

/// Sum term(0) + sum_{k>=1} [term(k) + term(-k)], extending past n_images until a
/// ring falls below series_tol. Tail estimate: twice the last ring.
template <class Term>
double image_sum(const Term& term, const KernelCache& c, double& tail) {
    double sum = term(0);
    for (int k = 1; k <= kMaxRings; ++k) {
        const double ring = term(k) + term(-k);
        sum += ring;
        if (k >= c.n_images() && std::fabs(ring) < c.series_tol()) {
            tail = 2.0 * std::fabs(ring);
            return sum;
        }
    }
    throw NonConvergence("image sum did not settle");
}

void check_time(double y, double y1) {
    if (!(y1 < y)) throw DegenerateTime("kernel needs y1 < y");
    if (y1 < 0.0) throw DegenerateTime("kernel needs y1 >= 0");
}

specfun::WrightParams wp(double rho, double delta, double tol) {
    specfun::WrightParams p;
    p.alpha = 1.0;
    p.beta = rho;
    p.mu = 1.0;
    p.delta = delta;
    p.series_tol = tol;
    return p;
}

}  // namespace

const char* kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::G: return "G";
        case KernelKind::Gbar: return "Gbar";
        case KernelKind::GbarX0: return "Gbar_x0";
        case KernelKind::GbarX1: return "Gbar_x1";
        case KernelKind::Gx1_0: return "Gx1_0";
        case KernelKind::Gx1_1: return "Gx1_1";
        case KernelKind::K1: return "K1";
        case KernelKind::K2: return "K2";
        default: return "?";
    }
}

KernelCache::KernelCache(double lambda, int n_images, double series_tol)
    : lambda_(lambda), rho_(lambda / 2.0), n_images_(n_images), series_tol_(series_tol) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in (0, 1]");
    if (n_images < 1) throw ValidationError("n_images must be >= 1");
    if (!(series_tol > 0.0)) throw ValidationError("series_tol must be positive");
    e_rho_ = std::make_unique<specfun::WrightFunction>(wp(rho_, rho_, series_tol));
    e_1mr_ = std::make_unique<specfun::WrightFunction>(wp(rho_, 1.0 - rho_, series_tol));
    e_0_ = std::make_unique<specfun::WrightFunction>(wp(rho_, 0.0, series_tol));
    e_1ml_ = std::make_unique<specfun::WrightFunction>(wp(rho_, 1.0 - lambda, series_tol));
    e_mr_ = std::make_unique<specfun::WrightFunction>(wp(rho_, -rho_, series_tol));
}

void KernelCache::record_tail(KernelKind k, double bound) const {
    std::lock_guard lock(mutex_);
    double& slot = tails_[static_cast<int>(k)];
    if (bound > slot) slot = bound;
}

double KernelCache::worst_tail(KernelKind k) const {
    std::lock_guard lock(mutex_);
    return tails_[static_cast<int>(k)];
}

double green_eval(double x, double y, double x1, double y1, const KernelCache& c, double* tail) {
    check_time(y, y1);
    const double d = y - y1;
    const double inv = std::pow(d, -c.rho());
    const auto& e = c.e_rho();
    double t = 0.0;
    const double s = image_sum(
        [&](int n) {
            return e(-std::fabs(x - x1 + 2.0 * n) * inv) - e(-std::fabs(x + x1 + 2.0 * n) * inv);
        },
        c, t);
    const double pre = 0.5 * std::pow(d, c.rho() - 1.0);
    c.record_tail(KernelKind::G, pre * t);
    if (tail) *tail = pre * t;
    return pre * s;
}

double gbar_closed(double x, double x1, double y, const KernelCache& c, double* tail) {
    if (!(y > 0.0)) throw DegenerateTime("Gbar needs y > 0");
    const double inv = std::pow(y, -c.rho());
    const auto& e = c.e_one_minus_rho();
    double t = 0.0;
    const double s = image_sum(
        [&](int n) {
            return e(-std::fabs(x - x1 + 2.0 * n) * inv) - e(-std::fabs(x + x1 + 2.0 * n) * inv);
        },
        c, t);
    c.record_tail(KernelKind::Gbar, 0.5 * inv * t);
    if (tail) *tail = 0.5 * inv * t;
    return 0.5 * inv * s;
}

double gbar_eval(double x, double x1, double y, const KernelCache& c) {
    if (!(y > 0.0)) throw DegenerateTime("Gbar needs y > 0");
    if (c.lambda() == 1.0) return green_eval(x, y, x1, 0.0, c);
    const double rho = c.rho();
    const auto& e = c.e_rho();
    // G without its (y - y1)^{rho-1} factor, which the quadrature weight carries
    auto F = [&](double, double d) {
        if (!(d > 0.0)) return 0.0;
        const double inv = std::pow(d, -rho);
        double t = 0.0;
        return 0.5 * image_sum(
                         [&](int n) {
                             return e(-std::fabs(x - x1 + 2.0 * n) * inv) - e(-std::fabs(x + x1 + 2.0 * n) * inv);
                         },
                         c, t);
    };
    fracquad::DoubleSingularOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-14;
    opt.max_nodes = 128;
    // F switches off where the nearest image distance a satisfies a/(y-y1)^rho ~ z_cutoff;
    // grade the y1 = y end down to that lag.
    double a = 2.0;
    for (double v : {std::fabs(x - x1), x + x1, 2.0 - x - x1, 2.0 - std::fabs(x - x1)})
        if (v > 0.0) a = std::min(a, v);
    const double cutoff = c.e_rho().params().z_cutoff;
    const double log2_lag = std::log2(a / cutoff) / rho;  // log2 of the switch-off lag
    const int extra = static_cast<int>(std::ceil(std::log2(0.5 * y) - log2_lag));
    opt.grading_levels = std::clamp(extra + 8, 12, 2000);
    return specfun::recip_gamma(1.0 - c.lambda()) * fracquad::quad_double_singular(std::function<double(double, double)>(F), y, c.lambda(), rho, opt);
}

double gx1_eval(double x, double y, int boundary, double y1, const KernelCache& c, double* tail) {
    check_time(y, y1);
    if (boundary != 0 && boundary != 1) throw ValidationError("boundary must be 0 or 1");
    const double d = y - y1;
    const double inv = std::pow(d, -c.rho());
    const auto& e = c.e_zero();
    const double shift = boundary == 0 ? x : x - 1.0;
    double t = 0.0;
    const double s = image_sum(
        [&](int n) {
            const double a = shift + 2.0 * n;
            return sgn(a) * e(-std::fabs(a) * inv);
        },
        c, t);
    const KernelKind kind = boundary == 0 ? KernelKind::Gx1_0 : KernelKind::Gx1_1;
    c.record_tail(kind, t / d);
    if (tail) *tail = t / d;
    return s / d;
}

K1Split kernel_K1_lag(double delta, const KernelCache& c) {
    if (!(delta > 0.0)) throw DegenerateTime("K1 needs y1 < y");
    const double inv = std::pow(delta, -c.rho());
    const auto& e = c.e_one_minus_rho();
    double sum = 0.0, last = 0.0;
    for (int k = 1; k <= kMaxRings; ++k) {
        const double ring = 2.0 * e(-2.0 * k * inv);
        sum += ring;
        if (k >= c.n_images() && std::fabs(ring) < c.series_tol()) {
            last = ring;
            break;
        }
        if (k == kMaxRings) throw NonConvergence("K1 image sum did not settle");
    }
    c.record_tail(KernelKind::K1, 2.0 * std::fabs(last) * inv);
    return {inv * specfun::recip_gamma(1.0 - c.rho()), inv * sum};
}

double kernel_K2_lag(double delta, const KernelCache& c) {
    if (!(delta > 0.0)) throw DegenerateTime("K2 needs y1 < y");
    const double inv = std::pow(delta, -c.rho());
    const auto& e = c.e_one_minus_rho();
    double sum = 0.0, last = 0.0;
    // rings pair n and -n-1, both with |2n+1| = 2k+1
    for (int k = 0; k <= kMaxRings; ++k) {
        const double ring = 2.0 * e(-(2.0 * k + 1.0) * inv);
        sum += ring;
        if (k + 1 >= c.n_images() && std::fabs(ring) < c.series_tol()) {
            last = ring;
            break;
        }
        if (k == kMaxRings) throw NonConvergence("K2 image sum did not settle");
    }
    c.record_tail(KernelKind::K2, 2.0 * std::fabs(last) * inv);
    return inv * sum;
}

K1Split kernel_K1(double y, double y1, const KernelCache& c) {
    check_time(y, y1);
    return kernel_K1_lag(y - y1, c);
}

double kernel_K2(double y, double y1, const KernelCache& c) {
    check_time(y, y1);
    return kernel_K2_lag(y - y1, c);
}

// d/dDelta (Delta^{-rho} e^{1,1-rho}(a Delta^{-rho})) = Delta^{-rho-1} e^{1,-rho}(a Delta^{-rho}); d/dy1 = -d/dDelta.
double kernel_K1_dy1(double y, double y1, const KernelCache& c) {
    check_time(y, y1);
    const double d = y - y1;
    const double inv = std::pow(d, -c.rho());
    const auto& e = c.e_minus_rho();
    double t = 0.0;
    const double s = image_sum([&](int n) { return e(-2.0 * std::abs(n) * inv); }, c, t);
    return -inv / d * s;
}

double kernel_K2_dy1(double y, double y1, const KernelCache& c) {
    check_time(y, y1);
    const double d = y - y1;
    const double inv = std::pow(d, -c.rho());
    const auto& e = c.e_minus_rho();
    double t = 0.0;
    const double s = image_sum([&](int n) { return e(-std::fabs(2.0 * n + 1.0) * inv); }, c, t);
    return -inv / d * s;
}

double gbar_x_trace(int side, double x1, double y, const KernelCache& c, double* tail) {
    if (!(y > 0.0)) throw DegenerateTime("Gbar_x needs y > 0");
    if (side != 0 && side != 1) throw ValidationError("side must be 0 or 1");
    const double inv = std::pow(y, -c.rho());
    const auto& e = c.e_one_minus_lambda();
    // side 1 is side 0 reflected: Gbar_x(1 - x1, y) = -Gbar_x(-(1 - x1), y)
    const double a0 = side == 0 ? x1 : 1.0 - x1;
    double t = 0.0;
    const double s = image_sum(
        [&](int n) {
            const double a = 2.0 * n + a0;
            return sgn(a) * e(-std::fabs(a) * inv);
        },
        c, t);
    const double pre = inv * inv * (side == 0 ? 1.0 : -1.0);
    c.record_tail(side == 0 ? KernelKind::GbarX0 : KernelKind::GbarX1, std::fabs(pre) * t);
    if (tail) *tail = std::fabs(pre) * t;
    return pre * s;
}

double trace_functional(int side, const std::function<double(double)>& tau1, double y, const KernelCache& c,
                        int nodes) {
    if (side != 0 && side != 1) throw ValidationError("side must be 0 or 1");
    if (!(y > 0.0)) throw DegenerateTime("trace functional needs y > 0");
    // F1[tau1] = -F0[tau1(1 - .)]
    const double sign = side == 0 ? 1.0 : -1.0;
    auto sigma = [&](double x) { return side == 0 ? tau1(x) : tau1(1.0 - x); };
    const double s0 = sigma(0.0);
    const double s1 = sigma(1.0);
    const auto& rule = quadrature::gauss_legendre(nodes);
    const double scale = std::pow(y, c.rho());
    double lo = 0.0, hi = std::min(1.0, 0.5 * scale);
    double integral = 0.0;
    while (lo < 1.0) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double x1 = mid + half * rule.nodes[i];
            s += rule.weights[i] * gbar_x_trace(0, x1, y, c) * (sigma(x1) - s0);
        }
        integral += half * s;
        lo = hi;
        hi = std::min(1.0, 2.0 * hi);
    }
    return sign * (integral + kernel_K2_lag(y, c) * (s1 - s0));
}

LagTables build_lag_tables(double h, int count, const KernelCache& c) {
    if (!(h > 0.0) || count < 0) throw DegenerateGrid("lag tables need h > 0");
    LagTables t{h, std::vector<double>(count), std::vector<double>(count)};
    for (int j = 0; j < count; ++j) {
        const double d = (j + 0.5) * h;
        t.k1_smooth[j] = kernel_K1_lag(d, c).smooth;
        t.k2[j] = kernel_K2_lag(d, c);
    }
    return t;
}

}  // namespace mixfrac::greens
