#pragma once

#include <cmath>
#include <random>
#include <string>

#include "mixfrac/errors.hpp"
#include "mixfrac/exprlang.hpp"

namespace mixfrac::testing {

/// Random tree of depth <= depth over the full grammar; exponents are constants.
class ExprGenerator {
public:
    explicit ExprGenerator(unsigned seed) : rng_(seed) {}

    std::string make(int depth) {
        if (depth == 0 || pick(4) == 0) return leaf();
        switch (pick(9)) {
            case 0: return "(" + make(depth - 1) + "+" + make(depth - 1) + ")";
            case 1: return "(" + make(depth - 1) + "-" + make(depth - 1) + ")";
            case 2: return "(" + make(depth - 1) + "*" + make(depth - 1) + ")";
            case 3: return "(" + make(depth - 1) + "/" + make(depth - 1) + ")";
            case 4: return "-" + make(depth - 1);
            case 5: {
                static const char* exps[] = {"2", "3", "0.5", "-1", "(1/3)"};
                return "(" + make(depth - 1) + ")^" + exps[pick(5)];
            }
            default: {
                static const char* fns[] = {"exp", "log", "sin", "cos", "sqrt"};
                return std::string(fns[pick(5)]) + "(" + make(depth - 1) + ")";
            }
        }
    }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::string leaf() {
        switch (pick(4)) {
            case 0:
            case 1: return "t";
            case 2: return "pi";
            default: {
                static const char* lits[] = {"1", "2", "0.5", "3.25", "1e-1"};
                return lits[pick(5)];
            }
        }
    }
    std::mt19937 rng_;
};

/// value, or NaN when t is near a singularity of e
inline double safe_eval(const expr::Ast& e, double t) {
    try {
        const double v = expr::eval(e, t);
        return std::isfinite(v) && std::fabs(v) < 1e4 ? v : NAN;
    } catch (const EvalError&) {
        return NAN;
    }
}

}  // namespace mixfrac::testing
