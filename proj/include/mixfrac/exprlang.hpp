#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "mixfrac/problem.hpp"

namespace mixfrac::expr {

enum class Kind { Number, Pi, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Func { Exp, Log, Sin, Cos, Sqrt };

struct Node;
using Ast = std::shared_ptr<const Node>;

/// Immutable expression node. Number literals are never negative: a leading
/// minus is always a Neg node, so printing and re-parsing gives the same tree.
struct Node {
    Kind kind = Kind::Number;
    double value = 0.0;      // Number
    Func func = Func::Exp;   // Call
    std::string name;        // Variable
    std::size_t offset = 0;  // source position (derived nodes inherit their origin's)
    Ast lhs, rhs;            // rhs unused for Neg and Call
};

/// Precedence ^ > unary minus > * / > + -; ^ is right-associative, the rest left.
/// Identifiers other than `variable`, `pi` and the five functions are rejected.
Ast parse(std::string_view src, std::string_view variable = "t");

/// Throws EvalError (with the node offset) on division by zero, log/sqrt outside
/// their domain, and powers with no real value.
double eval(const Ast& e, double value);

/// Symbolic derivative with light simplification (0/1 identities, constant folding).
/// Exponents must not depend on the variable.
Ast differentiate(const Ast& e);

/// Minimal-parenthesis form; parse(to_string(e)) is structurally equal to e.
std::string to_string(const Ast& e);

bool equal(const Ast& a, const Ast& b);
bool depends_on_variable(const Ast& e);

/// Problem datum from source text: value and symbolic derivative.
ScalarFunction scalar_function(std::string_view src, std::string_view variable = "t");

}  // namespace mixfrac::expr
