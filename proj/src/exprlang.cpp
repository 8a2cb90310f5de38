#include "mixfrac/exprlang.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mixfrac/errors.hpp"

namespace mixfrac::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 5> kFuncs{{
    {"exp", Func::Exp}, {"log", Func::Log}, {"sin", Func::Sin}, {"cos", Func::Cos}, {"sqrt", Func::Sqrt}}};

std::string_view func_name(Func f) {
    for (const auto& [n, g] : kFuncs)
        if (g == f) return n;
    return "?";
}

Ast make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Ast number(double v, std::size_t at) {
    Node n;
    n.kind = Kind::Number;
    n.value = v;
    n.offset = at;
    return make(std::move(n));
}

Ast unary(Kind k, Ast a, std::size_t at, Func f = Func::Exp) {
    Node n;
    n.kind = k;
    n.func = f;
    n.offset = at;
    n.lhs = std::move(a);
    return make(std::move(n));
}

Ast binary(Kind k, Ast a, Ast b, std::size_t at) {
    Node n;
    n.kind = k;
    n.offset = at;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make(std::move(n));
}

// ---- parser

class Parser {
public:
    Parser(std::string_view src, std::string_view var) : s_(src), var_(var) {}

    Ast run() {
        skip();
        if (pos_ == s_.size()) throw SyntaxError(pos_, "empty expression");
        Ast e = expr();
        if (pos_ != s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            skip();
            return true;
        }
        return false;
    }

    Ast expr() {
        Ast e = term();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('+')) e = binary(Kind::Add, e, term(), at);
            else if (accept('-')) e = binary(Kind::Sub, e, term(), at);
            else return e;
        }
    }

    Ast term() {
        Ast e = signed_factor();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('*')) e = binary(Kind::Mul, e, signed_factor(), at);
            else if (accept('/')) e = binary(Kind::Div, e, signed_factor(), at);
            else return e;
        }
    }

    Ast signed_factor() {
        const std::size_t at = pos_;
        if (accept('-')) return unary(Kind::Neg, signed_factor(), at);
        if (accept('+')) return signed_factor();
        return power();
    }

    Ast power() {
        Ast base = primary();
        const std::size_t at = pos_;
        if (accept('^')) return binary(Kind::Pow, base, signed_factor(), at);
        return base;
    }

    Ast primary() {
        const std::size_t at = pos_;
        if (pos_ == s_.size()) throw SyntaxError(pos_, "expected an operand");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            Ast e = expr();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
            return e;
        }
        throw SyntaxError(at, std::string("unexpected '") + c + "'");
    }

    Ast literal() {
        const std::size_t at = pos_;
        double v = 0.0;
        const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) throw SyntaxError(at, "malformed number");
        pos_ = static_cast<std::size_t>(end - s_.data());
        skip();
        return number(v, at);
    }

    Ast identifier() {
        const std::size_t at = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string_view id = s_.substr(at, pos_ - at);
        skip();
        for (const auto& [n, f] : kFuncs) {
            if (id != n) continue;
            if (!accept('(')) throw SyntaxError(pos_, "expected '(' after " + std::string(id));
            Ast arg = expr();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
            return unary(Kind::Call, arg, at, f);
        }
        if (id == "pi") {
            Node n;
            n.kind = Kind::Pi;
            n.offset = at;
            return make(std::move(n));
        }
        if (id == var_) {
            Node n;
            n.kind = Kind::Variable;
            n.name = std::string(var_);
            n.offset = at;
            return make(std::move(n));
        }
        throw UnknownIdentifier("'" + std::string(id) + "' at offset " + std::to_string(at));
    }

    std::string_view s_, var_;
    std::size_t pos_ = 0;
};

// ---- simplifying constructors used by differentiate

bool is_num(const Ast& a, double v) { return a->kind == Kind::Number && a->value == v; }

Ast fold(double v, std::size_t at) {
    if (!std::isfinite(v)) return nullptr;
    return v < 0.0 ? unary(Kind::Neg, number(-v, at), at) : number(v, at);
}

// literal value of a constant, possibly negated, node
bool literal_value(const Ast& a, double& v) {
    if (a->kind == Kind::Number) {
        v = a->value;
        return true;
    }
    if (a->kind == Kind::Neg && a->lhs->kind == Kind::Number) {
        v = -a->lhs->value;
        return true;
    }
    return false;
}

Ast neg(Ast a, std::size_t at) {
    if (is_num(a, 0.0)) return a;
    if (a->kind == Kind::Neg) return a->lhs;
    return unary(Kind::Neg, std::move(a), at);
}

Ast add(Ast a, Ast b, std::size_t at) {
    if (is_num(a, 0.0)) return b;
    if (is_num(b, 0.0)) return a;
    double x, y;
    if (literal_value(a, x) && literal_value(b, y))
        if (auto f = fold(x + y, at)) return f;
    if (b->kind == Kind::Neg) return binary(Kind::Sub, std::move(a), b->lhs, at);
    return binary(Kind::Add, std::move(a), std::move(b), at);
}

Ast sub(Ast a, Ast b, std::size_t at) {
    if (is_num(b, 0.0)) return a;
    if (is_num(a, 0.0)) return neg(std::move(b), at);
    double x, y;
    if (literal_value(a, x) && literal_value(b, y))
        if (auto f = fold(x - y, at)) return f;
    return binary(Kind::Sub, std::move(a), std::move(b), at);
}

Ast mul(Ast a, Ast b, std::size_t at) {
    if (is_num(a, 0.0) || is_num(b, 0.0)) return number(0.0, at);
    if (is_num(a, 1.0)) return b;
    if (is_num(b, 1.0)) return a;
    double x, y;
    if (literal_value(a, x) && literal_value(b, y))
        if (auto f = fold(x * y, at)) return f;
    if (a->kind == Kind::Neg) return neg(mul(a->lhs, std::move(b), at), at);
    if (b->kind == Kind::Neg) return neg(mul(std::move(a), b->lhs, at), at);
    return binary(Kind::Mul, std::move(a), std::move(b), at);
}

Ast div(Ast a, Ast b, std::size_t at) {
    if (is_num(a, 0.0)) return a;
    if (is_num(b, 1.0)) return a;
    return binary(Kind::Div, std::move(a), std::move(b), at);
}

Ast pow(Ast a, Ast b, std::size_t at) {
    if (is_num(b, 1.0)) return a;
    if (is_num(b, 0.0)) return number(1.0, at);
    return binary(Kind::Pow, std::move(a), std::move(b), at);
}

Ast call(Func f, Ast a, std::size_t at) { return unary(Kind::Call, std::move(a), at, f); }

// ---- printer

constexpr int kAddPrec = 1, kMulPrec = 2, kUnaryPrec = 3, kPowPrec = 4, kAtomPrec = 5;

int precedence(const Node& n) {
    switch (n.kind) {
        case Kind::Add:
        case Kind::Sub: return kAddPrec;
        case Kind::Mul:
        case Kind::Div: return kMulPrec;
        case Kind::Neg: return kUnaryPrec;
        case Kind::Pow: return kPowPrec;
        default: return kAtomPrec;
    }
}

void print(const Ast& e, int min_prec, std::string& out) {
    const bool paren = precedence(*e) < min_prec;
    if (paren) out += '(';
    switch (e->kind) {
        case Kind::Number: {
            char buf[32];
            const auto r = std::to_chars(buf, buf + sizeof buf, e->value);
            out.append(buf, r.ptr);
            break;
        }
        case Kind::Pi: out += "pi"; break;
        case Kind::Variable: out += e->name; break;
        case Kind::Add:
        case Kind::Sub:
            print(e->lhs, kAddPrec, out);
            out += e->kind == Kind::Add ? '+' : '-';
            print(e->rhs, kMulPrec, out);
            break;
        case Kind::Mul:
        case Kind::Div:
            print(e->lhs, kMulPrec, out);
            out += e->kind == Kind::Mul ? '*' : '/';
            print(e->rhs, kUnaryPrec, out);
            break;
        case Kind::Neg:
            out += '-';
            print(e->lhs, kUnaryPrec, out);
            break;
        case Kind::Pow:
            print(e->lhs, kAtomPrec, out);
            out += '^';
            print(e->rhs, kUnaryPrec, out);
            break;
        case Kind::Call:
            out += func_name(e->func);
            out += '(';
            print(e->lhs, 0, out);
            out += ')';
            break;
    }
    if (paren) out += ')';
}

[[noreturn]] void eval_error(const Node& n, const std::string& what) {
    throw EvalError(what + " at offset " + std::to_string(n.offset));
}

}  // namespace

Ast parse(std::string_view src, std::string_view variable) { return Parser(src, variable).run(); }

double eval(const Ast& e, double t) {
    const Node& n = *e;
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Pi: return std::numbers::pi;
        case Kind::Variable: return t;
        case Kind::Add: return eval(n.lhs, t) + eval(n.rhs, t);
        case Kind::Sub: return eval(n.lhs, t) - eval(n.rhs, t);
        case Kind::Mul: return eval(n.lhs, t) * eval(n.rhs, t);
        case Kind::Div: {
            const double a = eval(n.lhs, t), b = eval(n.rhs, t);
            if (b == 0.0) eval_error(n, "division by zero");
            return a / b;
        }
        case Kind::Neg: return -eval(n.lhs, t);
        case Kind::Pow: {
            const double a = eval(n.lhs, t), b = eval(n.rhs, t);
            if (a == 0.0 && b < 0.0) eval_error(n, "zero raised to a negative power");
            if (a < 0.0 && b != std::trunc(b)) eval_error(n, "negative base with non-integer exponent");
            return std::pow(a, b);
        }
        case Kind::Call: {
            const double a = eval(n.lhs, t);
            switch (n.func) {
                case Func::Exp: return std::exp(a);
                case Func::Log:
                    if (!(a > 0.0)) eval_error(n, "log of a non-positive value");
                    return std::log(a);
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Sqrt:
                    if (a < 0.0) eval_error(n, "sqrt of a negative value");
                    return std::sqrt(a);
            }
        }
    }
    eval_error(n, "malformed expression");
}

bool depends_on_variable(const Ast& e) {
    if (!e) return false;
    return e->kind == Kind::Variable || depends_on_variable(e->lhs) || depends_on_variable(e->rhs);
}

Ast differentiate(const Ast& e) {
    const Node& n = *e;
    const std::size_t at = n.offset;
    switch (n.kind) {
        case Kind::Number:
        case Kind::Pi: return number(0.0, at);
        case Kind::Variable: return number(1.0, at);
        case Kind::Add: return add(differentiate(n.lhs), differentiate(n.rhs), at);
        case Kind::Sub: return sub(differentiate(n.lhs), differentiate(n.rhs), at);
        case Kind::Mul:
            return add(mul(differentiate(n.lhs), n.rhs, at), mul(n.lhs, differentiate(n.rhs), at), at);
        case Kind::Div: {
            const Ast num = sub(mul(differentiate(n.lhs), n.rhs, at), mul(n.lhs, differentiate(n.rhs), at), at);
            return div(num, pow(n.rhs, number(2.0, at), at), at);
        }
        case Kind::Neg: return neg(differentiate(n.lhs), at);
        case Kind::Pow: {
            if (depends_on_variable(n.rhs))
                throw UnsupportedDerivative("exponent depends on the variable at offset " + std::to_string(at));
            if (!depends_on_variable(n.lhs)) return number(0.0, at);
            double c;
            const Ast lowered = literal_value(n.rhs, c) ? fold(c - 1.0, at) : sub(n.rhs, number(1.0, at), at);
            return mul(mul(n.rhs, pow(n.lhs, lowered, at), at), differentiate(n.lhs), at);
        }
        case Kind::Call: {
            const Ast& u = n.lhs;
            const Ast du = differentiate(u);
            switch (n.func) {
                case Func::Exp: return mul(e, du, at);
                case Func::Log: return div(du, u, at);
                case Func::Sin: return mul(call(Func::Cos, u, at), du, at);
                case Func::Cos: return neg(mul(call(Func::Sin, u, at), du, at), at);
                case Func::Sqrt: return div(du, mul(number(2.0, at), e, at), at);
            }
        }
    }
    throw UnsupportedDerivative("malformed expression");
}

std::string to_string(const Ast& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

bool equal(const Ast& a, const Ast& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Number: return a->value == b->value;
        case Kind::Variable: return a->name == b->name;
        case Kind::Call:
            if (a->func != b->func) return false;
            break;
        default: break;
    }
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

ScalarFunction scalar_function(std::string_view src, std::string_view variable) {
    const Ast f = parse(src, variable);
    const Ast df = differentiate(f);
    return ScalarFunction::make([f](double t) { return eval(f, t); }, [df](double t) { return eval(df, t); },
                                std::string(src));
}

}  // namespace mixfrac::expr
