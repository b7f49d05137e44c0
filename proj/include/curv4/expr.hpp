#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curv4/errors.hpp"
#include "curv4/jets.hpp"

namespace curv4 {

using ParamMap = std::map<std::string, double>;

/// Expression AST over 4 chart coordinates, named parameters, arithmetic,
/// and a fixed set of elementary functions. Immutable after construction;
/// evaluation is pure and thread-safe.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Number, Coord, Param, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Atan };

const char* func_name(Func f);

struct Expr {
    ExprKind kind;
    double number = 0.0;      // Number
    int axis = -1;            // Coord (0..3)
    std::string param;        // Param
    Func func = Func::Sin;    // Call
    ExprPtr a, b;             // operands

    static ExprPtr make_number(double v);
    static ExprPtr make_coord(int axis);
    static ExprPtr make_param(std::string name);
    static ExprPtr make_pi();
    static ExprPtr make_unary(ExprKind k, ExprPtr x);
    static ExprPtr make_binary(ExprKind k, ExprPtr x, ExprPtr y);
    static ExprPtr make_call(Func f, ExprPtr x);
};

/// Options for `parse`. Coordinates default to x0..x3. If `param_whitelist`
/// is set, identifiers outside coords/functions/pi must appear in it.
struct ParseOptions {
    std::array<std::string, 4> coords{"x0", "x1", "x2", "x3"};
    std::optional<std::vector<std::string>> param_whitelist;
};

/// Parse a single expression. Precedence: ^  >  unary -  >  * /  >  + -,
/// with ^ right-associative. Throws parse_error with a byte offset.
ExprPtr parse(const std::string& source, const ParseOptions& opts = {});

/// Unparse with minimal parentheses; parse(to_string(e)) is structurally
/// identical to e.
std::string to_string(const ExprPtr& e);

/// Structural tree equality.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// List of parameter names referenced by the expression.
std::vector<std::string> expr_params(const ExprPtr& e);

/// Wrap an expression as c * e (used by metric scaling helpers).
ExprPtr expr_scale(const ExprPtr& e, double c);

double eval_value(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params);
Jet1 eval_jet1(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params);
Jet2 eval_jet2(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params);

}  // namespace curv4
