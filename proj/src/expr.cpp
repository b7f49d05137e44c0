#include "curv4/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <set>

namespace curv4 {

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sqrt: return "sqrt";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
        case Func::Tanh: return "tanh";
        case Func::Atan: return "atan";
    }
    return "?";
}

static std::optional<Func> func_by_name(const std::string& s) {
    static const std::pair<const char*, Func> table[] = {
        {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
        {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
        {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
        {"atan", Func::Atan},
    };
    for (const auto& [name, f] : table)
        if (s == name) return f;
    return std::nullopt;
}

ExprPtr Expr::make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}
ExprPtr Expr::make_coord(int axis) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Coord;
    e->axis = axis;
    return e;
}
ExprPtr Expr::make_param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Param;
    e->param = std::move(name);
    return e;
}
ExprPtr Expr::make_pi() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Pi;
    return e;
}
ExprPtr Expr::make_unary(ExprKind k, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    return e;
}
ExprPtr Expr::make_binary(ExprKind k, ExprPtr x, ExprPtr y) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}
ExprPtr Expr::make_call(Func f, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->func = f;
    e->a = std::move(x);
    return e;
}

// ---------------------------------------------------------------------------
// Tokenizer / recursive-descent parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Type { Number, Ident, Op, LParen, RParen, Comma, End } type;
    double number = 0.0;
    std::string ident;
    char op = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= src_.size()) {
            t.type = Token::End;
            return t;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr == begin)
                throw parse_error("malformed number", pos_);
            pos_ += static_cast<std::size_t>(ptr - begin);
            t.type = Token::Number;
            t.number = v;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            t.type = Token::Ident;
            t.ident = src_.substr(start, pos_ - start);
            return t;
        }
        ++pos_;
        switch (c) {
            case '(': t.type = Token::LParen; return t;
            case ')': t.type = Token::RParen; return t;
            case ',': t.type = Token::Comma; return t;
            case '+': case '-': case '*': case '/': case '^':
                t.type = Token::Op;
                t.op = c;
                return t;
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", t.offset);
        }
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& src, const ParseOptions& opts)
        : opts_(opts), lex_(src), cur_(lex_.next()) {}

    ExprPtr run() {
        ExprPtr e = parse_sum();
        if (cur_.type != Token::End)
            throw parse_error("trailing input after expression", cur_.offset);
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    bool at_op(char c) const { return cur_.type == Token::Op && cur_.op == c; }

    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        while (at_op('+') || at_op('-')) {
            const char op = cur_.op;
            advance();
            ExprPtr rhs = parse_term();
            e = Expr::make_binary(op == '+' ? ExprKind::Add : ExprKind::Sub, e, rhs);
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (at_op('*') || at_op('/')) {
            const char op = cur_.op;
            advance();
            ExprPtr rhs = parse_unary();
            e = Expr::make_binary(op == '*' ? ExprKind::Mul : ExprKind::Div, e, rhs);
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (at_op('-')) {
            advance();
            return Expr::make_unary(ExprKind::Neg, parse_unary());
        }
        if (at_op('+')) {
            advance();
            return parse_unary();
        }
        return parse_power();
    }

    // Right-associative; exponent may carry a unary sign (2^-3).
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (at_op('^')) {
            advance();
            ExprPtr exp = parse_unary();
            return Expr::make_binary(ExprKind::Pow, base, exp);
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token t = cur_;
        switch (t.type) {
            case Token::Number:
                advance();
                return Expr::make_number(t.number);
            case Token::LParen: {
                advance();
                ExprPtr e = parse_sum();
                expect_rparen(t.offset);
                return e;
            }
            case Token::Ident: {
                advance();
                if (t.ident == "pi") return Expr::make_pi();
                for (int i = 0; i < 4; ++i)
                    if (t.ident == opts_.coords[i]) return Expr::make_coord(i);
                if (auto f = func_by_name(t.ident)) {
                    if (cur_.type != Token::LParen)
                        throw parse_error("function '" + t.ident + "' requires an argument list",
                                          cur_.offset);
                    const std::size_t open = cur_.offset;
                    advance();
                    ExprPtr arg = parse_sum();
                    if (cur_.type == Token::Comma)
                        throw parse_error("function '" + t.ident + "' takes exactly one argument",
                                          cur_.offset);
                    expect_rparen(open);
                    return Expr::make_call(*f, arg);
                }
                if (cur_.type == Token::LParen)
                    throw parse_error("unknown function '" + t.ident + "'", t.offset);
                if (opts_.param_whitelist) {
                    const auto& wl = *opts_.param_whitelist;
                    if (std::find(wl.begin(), wl.end(), t.ident) == wl.end())
                        throw parse_error("unknown identifier '" + t.ident + "'", t.offset);
                }
                return Expr::make_param(t.ident);
            }
            default:
                throw parse_error("expected a number, identifier, or '('", t.offset);
        }
    }

    void expect_rparen(std::size_t open_offset) {
        if (cur_.type != Token::RParen)
            throw parse_error("unbalanced '('", open_offset);
        advance();
    }

    const ParseOptions& opts_;
    Lexer lex_;
    Token cur_;
};

}  // namespace

ExprPtr parse(const std::string& source, const ParseOptions& opts) {
    return Parser(source, opts).run();
}

// ---------------------------------------------------------------------------
// Evaluation, generic over double / Jet1 / Jet2
// ---------------------------------------------------------------------------

namespace {

template <class T>
T make_coordinate(double value, int axis);
template <>
double make_coordinate<double>(double value, int) { return value; }
template <>
Jet1 make_coordinate<Jet1>(double value, int axis) { return Jet1::coordinate(value, axis); }
template <>
Jet2 make_coordinate<Jet2>(double value, int axis) { return Jet2::coordinate(value, axis); }

inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(const Jet1& x) { return x.all_finite(); }
inline bool all_finite(const Jet2& x) { return x.all_finite(); }

inline bool has_derivative(double) { return false; }
inline bool has_derivative(const Jet1& x) { return x.has_derivative(); }
inline bool has_derivative(const Jet2& x) { return x.has_derivative(); }

template <class T>
T int_pow(const T& base, long long n) {
    // n != 0; repeated multiplication keeps integer powers exact.
    bool invert = n < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-n)
                                  : static_cast<unsigned long long>(n);
    T acc(1.0);
    T b = base;
    while (k) {
        if (k & 1ull) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    if (invert) {
        if (value_of(acc) == 0.0) throw domain_error("division by zero in x^negative");
        return T(1.0) / acc;
    }
    return acc;
}

template <class T>
T apply_func(Func f, const T& u) {
    switch (f) {
        case Func::Sin: return jet_sin(u);
        case Func::Cos: return jet_cos(u);
        case Func::Tan: return jet_tan(u);
        case Func::Exp: return jet_exp(u);
        case Func::Log:
            if (value_of(u) <= 0.0) throw domain_error("log of non-positive value");
            return jet_log(u);
        case Func::Sqrt:
            if (value_of(u) < 0.0) throw domain_error("sqrt of negative value");
            if (value_of(u) == 0.0 && has_derivative(u))
                throw domain_error("sqrt derivative singular at zero");
            return jet_sqrt(u);
        case Func::Sinh: return jet_sinh(u);
        case Func::Cosh: return jet_cosh(u);
        case Func::Tanh: return jet_tanh(u);
        case Func::Atan: return jet_atan(u);
    }
    throw error("unreachable function kind");
}

template <class T>
T eval_generic(const Expr& e, const std::array<double, 4>& p, const ParamMap& params) {
    switch (e.kind) {
        case ExprKind::Number: return T(e.number);
        case ExprKind::Pi: return T(M_PI);
        case ExprKind::Coord: return make_coordinate<T>(p[e.axis], e.axis);
        case ExprKind::Param: {
            auto it = params.find(e.param);
            if (it == params.end())
                throw input_error("missing parameter '" + e.param + "'");
            return T(it->second);
        }
        case ExprKind::Neg: return -eval_generic<T>(*e.a, p, params);
        case ExprKind::Add: return eval_generic<T>(*e.a, p, params) + eval_generic<T>(*e.b, p, params);
        case ExprKind::Sub: return eval_generic<T>(*e.a, p, params) - eval_generic<T>(*e.b, p, params);
        case ExprKind::Mul: return eval_generic<T>(*e.a, p, params) * eval_generic<T>(*e.b, p, params);
        case ExprKind::Div: {
            T num = eval_generic<T>(*e.a, p, params);
            T den = eval_generic<T>(*e.b, p, params);
            if (value_of(den) == 0.0) throw domain_error("division by zero");
            return num / den;
        }
        case ExprKind::Pow: {
            T base = eval_generic<T>(*e.a, p, params);
            T exp = eval_generic<T>(*e.b, p, params);
            const double ev = value_of(exp);
            if (!has_derivative(exp) && ev == std::nearbyint(ev) && std::abs(ev) <= 64.0) {
                const long long n = static_cast<long long>(ev);
                if (n == 0) return T(1.0);
                return int_pow(base, n);
            }
            if (value_of(base) <= 0.0)
                throw domain_error("x^y with non-integer exponent requires x > 0");
            return jet_exp(exp * jet_log(base));
        }
        case ExprKind::Call: {
            T arg = eval_generic<T>(*e.a, p, params);
            T r = apply_func(e.func, arg);
            if (!all_finite(r))
                throw domain_error(std::string("non-finite result in ") + func_name(e.func));
            return r;
        }
    }
    throw error("unreachable expression kind");
}

template <class T>
T eval_checked(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params) {
    if (!e) throw input_error("null expression");
    T r = eval_generic<T>(*e, p, params);
    if (!all_finite(r)) throw domain_error("non-finite evaluation result");
    return r;
}

}  // namespace

double eval_value(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params) {
    return eval_checked<double>(e, p, params);
}
Jet1 eval_jet1(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params) {
    return eval_checked<Jet1>(e, p, params);
}
Jet2 eval_jet2(const ExprPtr& e, const std::array<double, 4>& p, const ParamMap& params) {
    return eval_checked<Jet2>(e, p, params);
}

// ---------------------------------------------------------------------------
// Unparse / structural equality
// ---------------------------------------------------------------------------

namespace {

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add: case ExprKind::Sub: return 1;
        case ExprKind::Mul: case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;  // atoms
    }
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void unparse(const Expr& e, std::string& out, const std::array<std::string, 4>& coords) {
    auto child = [&](const ExprPtr& c, bool need_paren) {
        if (need_paren) out += '(';
        unparse(*c, out, coords);
        if (need_paren) out += ')';
    };
    const int prec = precedence(e.kind);
    switch (e.kind) {
        case ExprKind::Number: out += format_number(e.number); return;
        case ExprKind::Pi: out += "pi"; return;
        case ExprKind::Coord: out += coords[e.axis]; return;
        case ExprKind::Param: out += e.param; return;
        case ExprKind::Neg:
            out += '-';
            child(e.a, precedence(e.a->kind) < prec);
            return;
        case ExprKind::Add: case ExprKind::Sub:
        case ExprKind::Mul: case ExprKind::Div:
            // Left-associative: the right child needs parens already at
            // equal precedence so the reparse rebuilds the same tree.
            child(e.a, precedence(e.a->kind) < prec);
            switch (e.kind) {
                case ExprKind::Add: out += " + "; break;
                case ExprKind::Sub: out += " - "; break;
                case ExprKind::Mul: out += "*"; break;
                default: out += "/"; break;
            }
            child(e.b, precedence(e.b->kind) <= prec);
            return;
        case ExprKind::Pow:
            // '^' is right-associative and binds above unary minus.
            child(e.a, precedence(e.a->kind) <= prec);
            out += '^';
            child(e.b, precedence(e.b->kind) < prec);
            return;
        case ExprKind::Call:
            out += func_name(e.func);
            out += '(';
            unparse(*e.a, out, coords);
            out += ')';
            return;
    }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    if (e) unparse(*e, out, ParseOptions{}.coords);
    return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Number: return a->number == b->number;
        case ExprKind::Pi: return true;
        case ExprKind::Coord: return a->axis == b->axis;
        case ExprKind::Param: return a->param == b->param;
        case ExprKind::Neg: return expr_equal(a->a, b->a);
        case ExprKind::Call: return a->func == b->func && expr_equal(a->a, b->a);
        default: return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
    }
}

static void collect_params(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == ExprKind::Param) out.insert(e->param);
    collect_params(e->a, out);
    collect_params(e->b, out);
}

std::vector<std::string> expr_params(const ExprPtr& e) {
    std::set<std::string> s;
    collect_params(e, s);
    return {s.begin(), s.end()};
}

ExprPtr expr_scale(const ExprPtr& e, double c) {
    return Expr::make_binary(ExprKind::Mul, Expr::make_number(c), e);
}

}  // namespace curv4
