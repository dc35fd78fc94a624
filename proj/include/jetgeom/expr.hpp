#pragma once

/**
 * @file expr.hpp
 * @brief Expression AST and recursive-descent parser for smooth maps.
 *
 * Grammar:
 *   map      := expr (';' expr)*
 *   expr     := term (('+'|'-') term)*
 *   term     := factor (('*'|'/') factor)*
 *   factor   := atom ('^' INTEGER)?
 *   atom     := NUMBER | 'x' INTEGER | FUNC '(' expr ')' | '(' expr ')' | '-' factor
 *   FUNC     := sin | cos | exp | log | sqrt | tanh
 */

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jet.hpp"

namespace jetgeom {

struct parse_error : std::runtime_error {
    std::size_t pos;
    parse_error(const std::string& msg, std::size_t at)
        : std::runtime_error(msg + " at position " + std::to_string(at)), pos(at) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    // Num: exact decimal literal num/den (den a power of ten), text as written.
    long long num = 0, den = 1;
    std::string text;
    int var = -1;        // Var
    long long expo = 0;  // Pow
    Prim prim{};         // Call
    ExprPtr a, b;

    static ExprPtr number(long long n, long long d, std::string t) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Num;
        e->num = n;
        e->den = d;
        e->text = std::move(t);
        return e;
    }
    static ExprPtr number(long long n) { return number(n, 1, std::to_string(n)); }
    static ExprPtr variable(int i) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var;
        e->var = i;
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr x) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(x);
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr x, ExprPtr y) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(x);
        e->b = std::move(y);
        return e;
    }
    static ExprPtr power(ExprPtr x, long long n) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->a = std::move(x);
        e->expo = n;
        return e;
    }
    static ExprPtr call(Prim p, ExprPtr x) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Call;
        e->prim = p;
        e->a = std::move(x);
        return e;
    }
};

/// Literal value as a Real.  Floating point uses the quotient directly;
/// exact scalar types get the decimal fraction numerator/denominator.
template <typename Real>
Real literal_value(const Expr& e) {
    if constexpr (std::is_floating_point_v<Real>)
        return Real(e.num) / Real(e.den);
    else
        return Real(e.num) / Real(e.den);
}

template <typename Real>
ScalarJet<Real> eval_expr(const Expr& e, const std::vector<ScalarJet<Real>>& vars, int order) {
    switch (e.kind) {
    case Expr::Kind::Num: return ScalarJet<Real>::constant(order, literal_value<Real>(e));
    case Expr::Kind::Var: return vars[std::size_t(e.var)];
    case Expr::Kind::Neg: return jet_neg(eval_expr(*e.a, vars, order));
    case Expr::Kind::Add: return jet_add(eval_expr(*e.a, vars, order), eval_expr(*e.b, vars, order));
    case Expr::Kind::Sub: return jet_sub(eval_expr(*e.a, vars, order), eval_expr(*e.b, vars, order));
    case Expr::Kind::Mul: return jet_mul(eval_expr(*e.a, vars, order), eval_expr(*e.b, vars, order));
    case Expr::Kind::Div: return jet_div(eval_expr(*e.a, vars, order), eval_expr(*e.b, vars, order));
    case Expr::Kind::Pow: return jet_pow(eval_expr(*e.a, vars, order), e.expo);
    case Expr::Kind::Call: return jet_primitive(e.prim, eval_expr(*e.a, vars, order));
    }
    throw eval_error("corrupt expression node");
}

namespace detail {

class Parser {
  public:
    Parser(std::string_view src, int in_dim) : src_(src), in_dim_(in_dim) {}

    std::vector<ExprPtr> parse_components() {
        std::vector<ExprPtr> out;
        out.push_back(parse_expr());
        while (peek() == ';') {
            ++pos_;
            out.push_back(parse_expr());
        }
        skip_ws();
        if (pos_ != src_.size()) throw parse_error("unexpected trailing input", pos_);
        return out;
    }

  private:
    std::string_view src_;
    int in_dim_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                lhs = Expr::binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                lhs = Expr::binary(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_atom();
        if (consume('^')) {
            bool neg = consume('-');
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw parse_error("expected integer exponent", at);
            long long e = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                e = e * 10 + (src_[pos_++] - '0');
            return Expr::power(base, neg ? -e : e);
        }
        return base;
    }

    ExprPtr parse_atom() {
        char c = peek();
        std::size_t at = pos_;
        if (c == '\0') throw parse_error("unexpected end of input", pos_);
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (!consume(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        if (c == '-') {
            ++pos_;
            // '^' binds tighter than unary minus, so -x0^2 is -(x0^2).
            return Expr::unary(Expr::Kind::Neg, parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
                name += src_[pos_++];
            if (name == "x") {
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw parse_error("expected variable index after 'x'", pos_);
                int idx = 0;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    idx = idx * 10 + (src_[pos_++] - '0');
                if (idx >= in_dim_)
                    throw parse_error("variable x" + std::to_string(idx) +
                                          " out of range for input arity " + std::to_string(in_dim_),
                                      at);
                return Expr::variable(idx);
            }
            Prim p;
            if (name == "sin") p = Prim::Sin;
            else if (name == "cos") p = Prim::Cos;
            else if (name == "exp") p = Prim::Exp;
            else if (name == "log") p = Prim::Log;
            else if (name == "sqrt") p = Prim::Sqrt;
            else if (name == "tanh") p = Prim::Tanh;
            else throw parse_error("unknown function '" + name + "'", at);
            if (!consume('(')) throw parse_error("expected '(' after '" + name + "'", pos_);
            ExprPtr arg = parse_expr();
            if (!consume(')')) throw parse_error("expected ')'", pos_);
            return Expr::call(p, arg);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", at);
    }

    ExprPtr parse_number() {
        std::size_t at = pos_;
        long long num = 0, den = 1;
        bool any = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            num = num * 10 + (src_[pos_] - '0');
            ++pos_;
            any = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                num = num * 10 + (src_[pos_] - '0');
                den *= 10;
                ++pos_;
                any = true;
            }
        }
        if (!any) throw parse_error("malformed number", at);
        return Expr::number(num, den, std::string(src_.substr(at, pos_ - at)));
    }
};

}  // namespace detail

/// Parse a single expression with declared input arity.
inline ExprPtr parse_expr_text(std::string_view src, int in_dim) {
    detail::Parser p(src, in_dim);
    auto comps = p.parse_components();
    if (comps.size() != 1) throw parse_error("expected a single component", 0);
    return comps[0];
}

/// Parse a semicolon-separated component list; the count must match out_dim.
inline std::vector<ExprPtr> parse_components(std::string_view src, int in_dim, int out_dim) {
    detail::Parser p(src, in_dim);
    auto comps = p.parse_components();
    if (int(comps.size()) != out_dim)
        throw parse_error("expected " + std::to_string(out_dim) + " components, found " +
                              std::to_string(comps.size()),
                          src.size());
    return comps;
}

namespace detail {
inline int precedence(Expr::Kind k) {
    switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}
}  // namespace detail

inline void print_expr(const Expr& e, std::string& out, int parent_prec = 0) {
    const int prec = detail::precedence(e.kind);
    const bool paren = prec < parent_prec;
    if (paren) out += '(';
    switch (e.kind) {
    case Expr::Kind::Num: out += e.text; break;
    case Expr::Kind::Var: out += "x" + std::to_string(e.var); break;
    case Expr::Kind::Neg:
        out += '-';
        print_expr(*e.a, out, prec + 1);
        break;
    case Expr::Kind::Add:
        print_expr(*e.a, out, prec);
        out += " + ";
        print_expr(*e.b, out, prec + 1);
        break;
    case Expr::Kind::Sub:
        print_expr(*e.a, out, prec);
        out += " - ";
        print_expr(*e.b, out, prec + 1);
        break;
    case Expr::Kind::Mul:
        print_expr(*e.a, out, prec);
        out += "*";
        print_expr(*e.b, out, prec + 1);
        break;
    case Expr::Kind::Div:
        print_expr(*e.a, out, prec);
        out += "/";
        print_expr(*e.b, out, prec + 1);
        break;
    case Expr::Kind::Pow:
        print_expr(*e.a, out, prec + 1);
        out += "^";
        if (e.expo < 0) out += "-";
        out += std::to_string(e.expo < 0 ? -e.expo : e.expo);
        break;
    case Expr::Kind::Call:
        out += prim_name(e.prim);
        out += '(';
        print_expr(*e.a, out, 0);
        out += ')';
        break;
    }
    if (paren) out += ')';
}

inline std::string to_string(const Expr& e) {
    std::string s;
    print_expr(e, s);
    return s;
}

}  // namespace jetgeom
