#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sympeig::expr {

/// Syntax error; `offset` is the byte position in the source text.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t at)
        : std::runtime_error(what + " (at byte " + std::to_string(at) + ")"), offset(at) {}
};

/// Arithmetic domain error during evaluation (division by zero,
/// log of a non-positive value, sqrt of a negative, overflow).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

/// Immutable expression tree with value semantics.
struct Node {
    NodeKind kind;
    double number = 0.0;       // Number
    std::string name;          // Variable, Call
    std::vector<Node> args;    // operands

    friend bool operator==(const Node& a, const Node& b) {
        return a.kind == b.kind && a.number == b.number && a.name == b.name &&
               a.args == b.args;
    }
};

using Ast = Node;

namespace detail {

inline const std::map<std::string, int>& function_arities() {
    static const std::map<std::string, int> table = {
        {"sqrt", 1}, {"exp", 1}, {"log", 1}, {"sin", 1}, {"cos", 1},
        {"abs", 1},  {"min", 2}, {"max", 2}, {"pow", 2},
    };
    return table;
}

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base
//   base   := atom ('^' factor)?
//   atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
// so '^' is right-associative and binds tighter than unary minus:
// -2^2 == -(2^2).
class Parser {
public:
    Parser(std::string_view src, const std::set<std::string>& vars)
        : src_(src), vars_(vars) {}

    Node run() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        Node n = expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return n;
    }

private:
    Node expr() {
        Node lhs = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                lhs = binary(NodeKind::Add, std::move(lhs), term());
            else if (accept('-'))
                lhs = binary(NodeKind::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    Node term() {
        Node lhs = factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                lhs = binary(NodeKind::Mul, std::move(lhs), factor());
            else if (accept('/'))
                lhs = binary(NodeKind::Div, std::move(lhs), factor());
            else
                return lhs;
        }
    }

    Node factor() {
        skip_ws();
        if (accept('-')) {
            Node n;
            n.kind = NodeKind::Negate;
            n.args.push_back(factor());
            return n;
        }
        return base();
    }

    Node base() {
        Node lhs = atom();
        skip_ws();
        if (accept('^')) return binary(NodeKind::Pow, std::move(lhs), factor());
        return lhs;
    }

    Node atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("expected a value", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Node n = expr();
            expect(')');
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Node number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
            throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t e = pos_ + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[e])))
                throw ParseError("malformed exponent", pos_);
            pos_ = e;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        Node n;
        n.kind = NodeKind::Number;
        try {
            n.number = std::stod(std::string(src_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            throw ParseError("number literal out of double range", start);
        }
        return n;
    }

    Node identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            const auto& fns = function_arities();
            const auto it = fns.find(name);
            if (it == fns.end()) throw ParseError("unknown function '" + name + "'", start);
            ++pos_;
            Node n;
            n.kind = NodeKind::Call;
            n.name = std::move(name);
            n.args.push_back(expr());
            while (true) {
                skip_ws();
                if (accept(',')) {
                    n.args.push_back(expr());
                    continue;
                }
                break;
            }
            expect(')');
            if (static_cast<int>(n.args.size()) != it->second)
                throw ParseError("function '" + n.name + "' takes " +
                                 std::to_string(it->second) + " argument(s), got " +
                                 std::to_string(n.args.size()), start);
            return n;
        }
        if (!vars_.count(name))
            throw ParseError("unknown identifier '" + name + "'", start);
        Node n;
        n.kind = NodeKind::Variable;
        n.name = std::move(name);
        return n;
    }

    static Node binary(NodeKind kind, Node lhs, Node rhs) {
        Node n;
        n.kind = kind;
        n.args.push_back(std::move(lhs));
        n.args.push_back(std::move(rhs));
        return n;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    std::string_view src_;
    const std::set<std::string>& vars_;
    std::size_t pos_ = 0;
};

inline double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string(what) + " produced a non-finite value");
    return v;
}

}  // namespace detail

/// Parse `source` against the declared variable set. Unknown identifiers,
/// unknown functions and arity mismatches are parse errors with byte offsets.
inline Ast parse(std::string_view source, const std::set<std::string>& allowed_vars) {
    return detail::Parser(source, allowed_vars).run();
}

inline double eval_pow(double base, double exponent) {
    const bool integral_exp =
        exponent == std::floor(exponent) && std::abs(exponent) < 1e15;
    if (base < 0.0 && !integral_exp)
        throw EvalError("fractional power of a negative base");
    if (base == 0.0 && exponent < 0.0) throw EvalError("zero raised to a negative power");
    return std::pow(base, exponent);
}

/// Evaluate with every variable bound. Domain violations raise EvalError
/// rather than returning infinities or NaNs.
inline double eval(const Ast& ast, const std::map<std::string, double>& bindings) {
    switch (ast.kind) {
        case NodeKind::Number:
            return ast.number;
        case NodeKind::Variable: {
            const auto it = bindings.find(ast.name);
            if (it == bindings.end())
                throw EvalError("unbound variable '" + ast.name + "'");
            return it->second;
        }
        case NodeKind::Negate:
            return -eval(ast.args[0], bindings);
        case NodeKind::Add:
            return detail::checked(eval(ast.args[0], bindings) + eval(ast.args[1], bindings),
                                   "'+'");
        case NodeKind::Sub:
            return detail::checked(eval(ast.args[0], bindings) - eval(ast.args[1], bindings),
                                   "'-'");
        case NodeKind::Mul:
            return detail::checked(eval(ast.args[0], bindings) * eval(ast.args[1], bindings),
                                   "'*'");
        case NodeKind::Div: {
            const double num = eval(ast.args[0], bindings);
            const double den = eval(ast.args[1], bindings);
            if (den == 0.0) throw EvalError("division by zero");
            return detail::checked(num / den, "'/'");
        }
        case NodeKind::Pow: {
            const double base = eval(ast.args[0], bindings);
            const double exponent = eval(ast.args[1], bindings);
            return detail::checked(eval_pow(base, exponent), "'^'");
        }
        case NodeKind::Call: {
            const double x = eval(ast.args[0], bindings);
            if (ast.name == "sqrt") {
                if (x < 0.0) throw EvalError("sqrt of a negative value");
                return std::sqrt(x);
            }
            if (ast.name == "exp") return detail::checked(std::exp(x), "exp");
            if (ast.name == "log") {
                if (x <= 0.0) throw EvalError("log of a non-positive value");
                return detail::checked(std::log(x), "log");
            }
            if (ast.name == "sin") return std::sin(x);
            if (ast.name == "cos") return std::cos(x);
            if (ast.name == "abs") return std::abs(x);
            const double y = eval(ast.args[1], bindings);
            if (ast.name == "min") return std::min(x, y);
            if (ast.name == "max") return std::max(x, y);
            if (ast.name == "pow") return detail::checked(eval_pow(x, y), "pow");
            throw EvalError("unknown function '" + ast.name + "'");
        }
    }
    throw EvalError("corrupt expression tree");
}

/// Render with the minimal parentheses that reparse to an identical tree.
inline std::string to_string(const Ast& ast) {
    struct Printer {
        static int precedence(const Node& n) {
            switch (n.kind) {
                case NodeKind::Add:
                case NodeKind::Sub: return 1;
                case NodeKind::Mul:
                case NodeKind::Div: return 2;
                case NodeKind::Negate: return 3;
                case NodeKind::Pow: return 4;
                default: return 5;
            }
        }
        static std::string wrap(const Node& n, int min_prec) {
            std::string s = print(n);
            if (precedence(n) < min_prec) return "(" + s + ")";
            return s;
        }
        static std::string print(const Node& n) {
            switch (n.kind) {
                case NodeKind::Number: {
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "%.17g", n.number);
                    return buf;
                }
                case NodeKind::Variable:
                    return n.name;
                case NodeKind::Negate:
                    // operand of unary minus is a factor; '^' binds tighter
                    return "-" + wrap(n.args[0], 3);
                case NodeKind::Add:
                    return wrap(n.args[0], 1) + " + " + wrap(n.args[1], 2);
                case NodeKind::Sub:
                    return wrap(n.args[0], 1) + " - " + wrap(n.args[1], 2);
                case NodeKind::Mul:
                    return wrap(n.args[0], 2) + "*" + wrap(n.args[1], 3);
                case NodeKind::Div:
                    return wrap(n.args[0], 2) + "/" + wrap(n.args[1], 3);
                case NodeKind::Pow:
                    // right-associative: parenthesize a left child that is
                    // itself a power or a negation
                    return wrap(n.args[0], 5) + "^" + wrap(n.args[1], 3);
                case NodeKind::Call: {
                    std::string s = n.name + "(" + print(n.args[0]);
                    for (std::size_t i = 1; i < n.args.size(); ++i)
                        s += ", " + print(n.args[i]);
                    return s + ")";
                }
            }
            return {};
        }
    };
    return Printer::print(ast);
}

}  // namespace sympeig::expr
