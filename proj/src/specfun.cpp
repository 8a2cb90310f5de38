#include "mixfrac/specfun.hpp"

#include <quadmath.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cfloat>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "mixfrac/errors.hpp"

namespace mixfrac::specfun {

namespace {

using quad = __float128;

// Precision traits for the two summation types.
template <class T>
struct Prec;

template <>
struct Prec<long double> {
    static long double lgamma(long double x) { return lgammal(x); }
    static long double tgamma(long double x) { return tgammal(x); }
    static long double sin(long double x) { return sinl(x); }
    static long double fmod(long double x, long double y) { return fmodl(x, y); }
    static long double floor(long double x) { return floorl(x); }
    static long double exp(long double x) { return expl(x); }
    static long double fabs(long double x) { return fabsl(x); }
    static long double pi() { return 3.141592653589793238462643383279502884L; }
    // Coefficients carry a few ulps of error each; leave headroom.
    static double eps() { return 64.0 * LDBL_EPSILON; }
};

template <>
struct Prec<quad> {
    static quad lgamma(quad x) { return lgammaq(x); }
    static quad tgamma(quad x) { return tgammaq(x); }
    static quad sin(quad x) { return sinq(x); }
    static quad fmod(quad x, quad y) { return fmodq(x, y); }
    static quad floor(quad x) { return floorq(x); }
    static quad exp(quad x) { return expq(x); }
    static quad fabs(quad x) { return fabsq(x); }
    static quad pi() { return M_PIq; }
    static double eps() { return 64.0 * static_cast<double>(FLT128_EPSILON); }
};

// Last resort for strongly cancelling sums at small beta and large |z|.
using wide = boost::multiprecision::cpp_bin_float_100;

template <>
struct Prec<wide> {
    static wide lgamma(const wide& x) { return boost::math::lgamma(x); }
    static wide tgamma(const wide& x) { return boost::math::tgamma(x); }
    static wide sin(const wide& x) { return boost::multiprecision::sin(x); }
    static wide fmod(const wide& x, const wide& y) { return boost::multiprecision::fmod(x, y); }
    static wide floor(const wide& x) { return boost::multiprecision::floor(x); }
    static wide exp(const wide& x) { return boost::multiprecision::exp(x); }
    static wide fabs(const wide& x) { return boost::multiprecision::fabs(x); }
    static wide pi() { return boost::math::constants::pi<wide>(); }
    static double eps() { return 64.0 * std::numeric_limits<wide>::epsilon().convert_to<double>(); }
};

template <class T>
T sin_pi_t(T x) {
    using P = Prec<T>;
    T r = P::fmod(x, T(2));  // exact
    if (r > 1) r -= 2;
    if (r < -1) r += 2;
    if (r == 0 || r == 1 || r == -1) return T(0);
    if (r > T(0.5)) r = 1 - r;
    if (r < T(-0.5)) r = -1 - r;
    return P::sin(P::pi() * r);
}

template <class T>
T recip_gamma_t(T x) {
    using P = Prec<T>;
    if (x <= 0 && x == P::floor(x)) return T(0);
    if (x > 0) {
        if (x < 150) return 1 / P::tgamma(x);
        return P::exp(-P::lgamma(x));
    }
    // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
    const T one_minus = 1 - x;
    const T g = one_minus < 150 ? P::tgamma(one_minus) : P::exp(P::lgamma(one_minus));
    return sin_pi_t(x) * g / P::pi();
}

struct SeriesResult {
    double value = 0.0;
    double peak = 0.0;
    int terms = 0;
};

constexpr int kMaxTerms = 900;
constexpr double kOverflowGuard = 1e300;

// Compensated forward summation of sum_n coef(n) z^n.
template <class T, class Coef>
SeriesResult sum_series(Coef&& coef, double z_in, double tol) {
    using P = Prec<T>;
    const T z = z_in;
    T sum = 0, comp = 0, zpow = 1;
    T peak = 0;
    int small_run = 0;
    const int n_min = static_cast<int>(std::ceil(std::fabs(z_in))) + 2;
    for (int n = 0; n < kMaxTerms; ++n) {
        const T term = coef(n) * zpow;
        zpow *= z;
        const T y = term - comp;
        const T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const T mag = P::fabs(term);
        if (mag > peak) peak = mag;
        if (static_cast<double>(peak) > kOverflowGuard) {
            throw NonConvergence("Wright-type series terms exceed the overflow guard at z = " +
                                 std::to_string(z_in));
        }
        const double scale = std::max(1.0, std::fabs(static_cast<double>(sum)));
        if (static_cast<double>(mag) <= tol * scale) {
            ++small_run;
        } else {
            small_run = 0;
        }
        if (small_run >= 3 && n >= n_min) {
            return {static_cast<double>(sum), static_cast<double>(peak), n + 1};
        }
        if (z_in == 0.0) return {static_cast<double>(sum), static_cast<double>(peak), 1};
    }
    throw NonConvergence("Wright-type series did not reach tolerance within " +
                         std::to_string(kMaxTerms) + " terms at z = " + std::to_string(z_in));
}

bool stable(const SeriesResult& r, double eps, double tol) {
    return r.peak * eps <= tol * std::max(1.0, std::fabs(r.value));
}

// Double-double Horner evaluation of sum_{n<terms} c_n z^n, c_n = hi + lo. Hardware
// FMA makes this an order of magnitude cheaper than the software 128-bit type;
// it is tried between the 80-bit and the 128-bit passes.
struct DDCoefs {
    const double* hi = nullptr;
    const double* lo = nullptr;
    int usable = 0;  // coefficients [0, usable) are normal doubles
};

double dd_eps(int terms) { return 8.0 * terms * 0x1p-104; }

double horner_dd(const DDCoefs& c, int terms, double z) {
    double s = c.hi[terms - 1], e = c.lo[terms - 1];
    for (int n = terms - 2; n >= 0; --n) {
        const double p = s * z;
        const double pe = std::fma(s, z, -p) + e * z;
        const double t = p + c.hi[n];
        const double bv = t - p;
        const double te = (p - (t - bv)) + (c.hi[n] - bv) + pe + c.lo[n];
        s = t + te;
        e = te - (s - t);
    }
    return s + e;
}

template <class CoefLd, class CoefQ, class CoefW>
double evaluate_wright(const WrightParams& p, double z, CoefLd&& cld, CoefQ&& cq, CoefW&& cw,
                       WrightDiagnostics* diag, const DDCoefs* ddc = nullptr) {
    WrightDiagnostics local;
    WrightDiagnostics& d = diag ? *diag : local;
    d = WrightDiagnostics{};

    if (z < 0.0) {
        const double env = wright_decay_envelope(p, z);
        if (z < -p.z_cutoff || (z < -1.0 && env < 1e-3 * p.series_tol)) {
            d.decayed = true;
            d.error_bound = env;
            return 0.0;
        }
    }

    const SeriesResult r_ld = sum_series<long double>(cld, z, p.series_tol);
    d.terms = r_ld.terms;
    d.peak_term = r_ld.peak;
    if (stable(r_ld, Prec<long double>::eps(), p.series_tol)) {
        d.error_bound = r_ld.peak * Prec<long double>::eps();
        return r_ld.value;
    }

    // a few extra terms beyond the 80-bit stopping point cover its truncation
    const int dd_terms = r_ld.terms + 4;
    if (ddc && dd_terms <= ddc->usable && stable(r_ld, dd_eps(dd_terms), p.series_tol)) {
        d.extended_precision = true;
        d.terms = dd_terms;
        d.error_bound = r_ld.peak * dd_eps(dd_terms);
        return horner_dd(*ddc, dd_terms, z);
    }

    const SeriesResult r_q = sum_series<quad>(cq, z, p.series_tol);
    d.terms = r_q.terms;
    d.peak_term = r_q.peak;
    d.extended_precision = true;
    if (stable(r_q, Prec<quad>::eps(), p.series_tol)) {
        d.error_bound = r_q.peak * Prec<quad>::eps();
        return r_q.value;
    }

    const SeriesResult r_w = sum_series<wide>(cw(), z, p.series_tol);
    d.terms = r_w.terms;
    d.peak_term = r_w.peak;
    if (stable(r_w, Prec<wide>::eps(), p.series_tol)) {
        d.error_bound = r_w.peak * Prec<wide>::eps();
        return r_w.value;
    }

    const double env = z < 0.0 ? wright_decay_envelope(p, z) : HUGE_VAL;
    if (env < p.series_tol) {
        d.decayed = true;
        d.error_bound = env;
        return 0.0;
    }
    throw NonConvergence("Wright-type series is ill-conditioned at z = " + std::to_string(z) +
                         " (peak term " + std::to_string(r_w.peak) + "); lower z_cutoff");
}

}  // namespace

double sin_pi(double x) { return static_cast<double>(sin_pi_t<long double>(x)); }

double recip_gamma(double x) {
    if (!std::isfinite(x)) return x > 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(recip_gamma_t<long double>(x));
}

void WrightParams::validate() const {
    if (!(alpha > 0.0)) throw ValidationError("Wright alpha must be positive");
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("Wright beta must lie in (0,1)");
    if (!(series_tol > 0.0)) throw ValidationError("series_tol must be positive");
    if (!(z_cutoff > 0.0)) throw ValidationError("z_cutoff must be positive");
}

double wright_decay_envelope(const WrightParams& p, double z) {
    if (p.alpha != 1.0 || p.mu != 1.0 || z >= 0.0) return HUGE_VAL;
    const double b = p.beta;
    const double big_y = (1.0 - b) * std::pow(std::pow(b, b) * (-z), 1.0 / (1.0 - b));
    const double power = std::fabs(0.5 - p.delta) + 1.0;
    return 10.0 * std::pow(1.0 + big_y, power) * std::exp(-big_y);
}

double wright_e(const WrightParams& p, double z, WrightDiagnostics* diag) {
    p.validate();
    auto cld = [&](int n) {
        const long double nn = n;
        return recip_gamma_t<long double>(p.alpha * nn + p.mu) *
               recip_gamma_t<long double>(p.delta - p.beta * nn);
    };
    auto cq = [&](int n) {
        const quad nn = n;
        return recip_gamma_t<quad>(quad(p.alpha) * nn + quad(p.mu)) *
               recip_gamma_t<quad>(quad(p.delta) - quad(p.beta) * nn);
    };
    auto cw = [&] {
        return [&](int n) {
            const wide nn = n;
            return recip_gamma_t<wide>(wide(p.alpha) * nn + wide(p.mu)) *
                   recip_gamma_t<wide>(wide(p.delta) - wide(p.beta) * nn);
        };
    };
    return evaluate_wright(p, z, cld, cq, cw, diag);
}

struct WrightFunction::Tables {
    WrightParams p;
    std::vector<long double> ld;
    std::vector<quad> q;
    std::vector<double> dd_hi, dd_lo;
    DDCoefs dd;
    // 100-digit coefficients are expensive; built on first use
    mutable std::once_flag wide_once;
    mutable std::vector<wide> w;

    const std::vector<wide>& wide_coefs() const {
        std::call_once(wide_once, [this] {
            w.resize(kMaxTerms);
            for (int n = 0; n < kMaxTerms; ++n) {
                const wide nn = n;
                w[n] = recip_gamma_t<wide>(wide(p.alpha) * nn + wide(p.mu)) *
                       recip_gamma_t<wide>(wide(p.delta) - wide(p.beta) * nn);
            }
        });
        return w;
    }
};

WrightFunction::WrightFunction(const WrightParams& p) : params_(p) {
    p.validate();
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->ld.resize(kMaxTerms);
    t->q.resize(kMaxTerms);
    for (int n = 0; n < kMaxTerms; ++n) {
        const quad nn = n;
        t->q[n] = recip_gamma_t<quad>(quad(p.alpha) * nn + quad(p.mu)) *
                  recip_gamma_t<quad>(quad(p.delta) - quad(p.beta) * nn);
        t->ld[n] = static_cast<long double>(t->q[n]);
    }
    t->dd_hi.resize(kMaxTerms);
    t->dd_lo.resize(kMaxTerms);
    int usable = 0;
    for (int n = 0; n < kMaxTerms; ++n) {
        const double hi = static_cast<double>(t->q[n]);
        t->dd_hi[n] = hi;
        t->dd_lo[n] = static_cast<double>(t->q[n] - quad(hi));
        const double a = std::fabs(hi);
        if (usable == n && (hi == 0.0 || (a > 1e-280 && a < 1e280))) usable = n + 1;
    }
    t->dd = {t->dd_hi.data(), t->dd_lo.data(), usable};
    tables_ = std::move(t);
}

double WrightFunction::operator()(double z, WrightDiagnostics* diag) const {
    const Tables& t = *tables_;
    return evaluate_wright(
        params_, z, [&](int n) { return t.ld[n]; }, [&](int n) { return t.q[n]; },
        [&] {
            const std::vector<wide>& w = t.wide_coefs();
            return [&w](int n) { return w[n]; };
        },
        diag, &t.dd);
}

namespace {

double central_derivative(const auto& f, double x, double h) {
    auto d = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

std::array<double, 4> wright_identity_residuals(const WrightParams& p, double z) {
    if (!(z < 0.0)) throw ValidationError("identity residuals require z < 0");
    auto with = [&](double mu, double delta) {
        WrightParams q = p;
        q.mu = mu;
        q.delta = delta;
        return q;
    };
    const double b = p.beta, mu = p.mu, dl = p.delta;
    const WrightParams base = p;
    const WrightParams dm1 = with(mu, dl - 1.0);
    const WrightParams dmb = with(mu, dl - b);
    const WrightParams mum1 = with(mu - 1.0, dl);

    std::array<double, 4> r{};
    const double h = 1e-3 * std::min(1.0, std::fabs(z));

    const double e0 = wright_e(base, z);
    const double em1 = wright_e(dm1, z);
    const double bracket = em1 + (1.0 - dl) * e0;

    const double fd = central_derivative([&](double w) { return wright_e(base, w); }, z, h);
    r[0] = std::fabs(-bracket / (b * z) - fd);

    r[1] = std::fabs(bracket + b * z * wright_e(dmb, z));

    const double s3 = std::pow(-z, 1.0 / p.alpha);
    const double c3 = -1.0;
    auto g3 = [&](double s) { return std::pow(s, mu - 1.0) * wright_e(base, c3 * std::pow(s, p.alpha)); };
    const double rhs3 = std::pow(s3, mu - 2.0) * wright_e(mum1, c3 * std::pow(s3, p.alpha));
    r[2] = std::fabs(central_derivative(g3, s3, 1e-3 * s3) - rhs3);

    const double s4 = -z;
    const double c4 = z * std::pow(s4, b);
    auto g4 = [&](double s) { return std::pow(s, dl - 1.0) * wright_e(base, c4 * std::pow(s, -b)); };
    const double rhs4 = std::pow(s4, dl - 2.0) * wright_e(dm1, c4 * std::pow(s4, -b));
    r[3] = std::fabs(central_derivative(g4, s4, 1e-3 * s4) - rhs4);
    return r;
}

double mittag_leffler(double lambda, double z) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ValidationError("Mittag-Leffler order must lie in (0,1]");
    if (z > 0.0) throw ValidationError("Mittag-Leffler is evaluated for z <= 0 only");
    if (lambda == 1.0) return std::exp(z);
    constexpr double tol = 1e-15;
    // for small lambda and moderate |z| the series needs more terms than the cap
    try {
        const SeriesResult r = sum_series<long double>(
            [&](int n) { return recip_gamma_t<long double>(lambda * static_cast<long double>(n) + 1.0L); }, z,
            tol);
        if (stable(r, Prec<long double>::eps(), 1e-14)) return r.value;
    } catch (const NonConvergence&) {
    }

    // E_a(-t^a) = sin(a pi)/(a pi) * int_0^inf exp(-t u^{1/a}) / (u^2 + 2u cos(a pi) + 1) du
    const double pi = boost::math::constants::pi<double>();
    const double t = std::pow(-z, 1.0 / lambda);
    const double c = std::cos(lambda * pi);
    auto f = [&](double u) {
        return std::exp(-t * std::pow(u, 1.0 / lambda)) / (u * u + 2.0 * u * c + 1.0);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    const double integral = integrator.integrate(f, 1e-14, &err);
    return std::sin(lambda * pi) / (lambda * pi) * integral;
}

}  // namespace mixfrac::specfun
