#include "maxsurf/holfun.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace maxsurf {

namespace {

enum class Fun { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

const char* fun_name(Fun f) {
    switch (f) {
        case Fun::Exp: return "exp";
        case Fun::Log: return "log";
        case Fun::Sin: return "sin";
        case Fun::Cos: return "cos";
        case Fun::Sinh: return "sinh";
        case Fun::Cosh: return "cosh";
        case Fun::Sqrt: return "sqrt";
    }
    return "?";
}

}  // namespace

struct HolExpr::Node {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Fn };

    Kind kind;
    Complex value{};    // Const
    int exponent = 0;   // Pow
    Fun fn{};           // Fn
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = HolExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr mk(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr mk_const(Complex c) { return mk({Node::Kind::Const, c}); }

NodePtr mk_var() { return mk({Node::Kind::Var}); }

bool is_const(const NodePtr& n) { return n->kind == Node::Kind::Const; }

bool is_const(const NodePtr& n, Complex v) { return is_const(n) && n->value == v; }

NodePtr mk_unary(Node::Kind k, NodePtr a) {
    Node n{k};
    n.a = std::move(a);
    return mk(std::move(n));
}

NodePtr mk_binary(Node::Kind k, NodePtr a, NodePtr b) {
    Node n{k};
    n.a = std::move(a);
    n.b = std::move(b);
    return mk(std::move(n));
}

NodePtr mk_fn(Fun f, NodePtr a) {
    Node n{Node::Kind::Fn};
    n.fn = f;
    n.a = std::move(a);
    return mk(std::move(n));
}

NodePtr mk_pow(NodePtr a, int e) {
    if (e == 0) return mk_const(1.0);
    if (e == 1) return a;
    if (is_const(a)) {
        // folded below in fold helpers via evaluation; keep simple here
    }
    Node n{Node::Kind::Pow};
    n.exponent = e;
    n.a = std::move(a);
    return mk(std::move(n));
}

// constant-folding constructors used by differentiate
NodePtr fold_neg(NodePtr a) {
    if (is_const(a)) return mk_const(-a->value);
    return mk_unary(Node::Kind::Neg, std::move(a));
}

NodePtr fold_add(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return mk_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return mk_binary(Node::Kind::Add, std::move(a), std::move(b));
}

NodePtr fold_sub(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return mk_const(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return fold_neg(std::move(b));
    return mk_binary(Node::Kind::Sub, std::move(a), std::move(b));
}

NodePtr fold_mul(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return mk_const(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return mk_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return mk_binary(Node::Kind::Mul, std::move(a), std::move(b));
}

NodePtr fold_div(NodePtr a, NodePtr b) {
    if (is_const(b, 1.0)) return a;
    if (is_const(a, 0.0)) return mk_const(0.0);
    if (is_const(a) && is_const(b) && b->value != 0.0) return mk_const(a->value / b->value);
    return mk_binary(Node::Kind::Div, std::move(a), std::move(b));
}

// integer power by squaring; exact for Gaussian-integer style inputs
Complex ipow(Complex base, int e) {
    if (e < 0) {
        if (base == 0.0) throw EvalError("division by zero in negative power");
        return 1.0 / ipow(base, -e);
    }
    Complex r = 1.0;
    Complex p = base;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1u) r *= p;
        p *= p;
        n >>= 1u;
    }
    return r;
}

Complex eval_node(const Node& n, Complex t) {
    switch (n.kind) {
        case Node::Kind::Const: return n.value;
        case Node::Kind::Var: return t;
        case Node::Kind::Neg: return -eval_node(*n.a, t);
        case Node::Kind::Add: return eval_node(*n.a, t) + eval_node(*n.b, t);
        case Node::Kind::Sub: return eval_node(*n.a, t) - eval_node(*n.b, t);
        case Node::Kind::Mul: return eval_node(*n.a, t) * eval_node(*n.b, t);
        case Node::Kind::Div: {
            Complex num = eval_node(*n.a, t);
            Complex den = eval_node(*n.b, t);
            if (den == 0.0) throw EvalError("division by zero");
            return num / den;
        }
        case Node::Kind::Pow: return ipow(eval_node(*n.a, t), n.exponent);
        case Node::Kind::Fn: {
            Complex u = eval_node(*n.a, t);
            switch (n.fn) {
                case Fun::Exp: return std::exp(u);
                case Fun::Log:
                    if (u == 0.0) throw EvalError("log of zero");
                    return std::log(u);
                case Fun::Sin: return std::sin(u);
                case Fun::Cos: return std::cos(u);
                case Fun::Sinh: return std::sinh(u);
                case Fun::Cosh: return std::cosh(u);
                case Fun::Sqrt: return std::sqrt(u);
            }
        }
    }
    throw EvalError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case Node::Kind::Const: return mk_const(0.0);
        case Node::Kind::Var: return mk_const(1.0);
        case Node::Kind::Neg: return fold_neg(diff_node(n->a));
        case Node::Kind::Add: return fold_add(diff_node(n->a), diff_node(n->b));
        case Node::Kind::Sub: return fold_sub(diff_node(n->a), diff_node(n->b));
        case Node::Kind::Mul:
            return fold_add(fold_mul(diff_node(n->a), n->b), fold_mul(n->a, diff_node(n->b)));
        case Node::Kind::Div:
            return fold_div(fold_sub(fold_mul(diff_node(n->a), n->b), fold_mul(n->a, diff_node(n->b))),
                            mk_pow(n->b, 2));
        case Node::Kind::Pow:
            if (n->exponent == 0) return mk_const(0.0);
            return fold_mul(fold_mul(mk_const(double(n->exponent)), mk_pow(n->a, n->exponent - 1)),
                            diff_node(n->a));
        case Node::Kind::Fn: {
            NodePtr du = diff_node(n->a);
            switch (n->fn) {
                case Fun::Exp: return fold_mul(du, n);
                case Fun::Log: return fold_div(du, n->a);
                case Fun::Sin: return fold_mul(du, mk_fn(Fun::Cos, n->a));
                case Fun::Cos: return fold_neg(fold_mul(du, mk_fn(Fun::Sin, n->a)));
                case Fun::Sinh: return fold_mul(du, mk_fn(Fun::Cosh, n->a));
                case Fun::Cosh: return fold_mul(du, mk_fn(Fun::Sinh, n->a));
                case Fun::Sqrt: return fold_div(du, fold_mul(mk_const(2.0), n));
            }
        }
    }
    throw EvalError("corrupt expression node");
}

NodePtr substitute(const NodePtr& n, const NodePtr& inner) {
    switch (n->kind) {
        case Node::Kind::Const: return n;
        case Node::Kind::Var: return inner;
        case Node::Kind::Neg: return mk_unary(Node::Kind::Neg, substitute(n->a, inner));
        case Node::Kind::Pow: return mk_pow(substitute(n->a, inner), n->exponent);
        case Node::Kind::Fn: return mk_fn(n->fn, substitute(n->a, inner));
        default: return mk_binary(n->kind, substitute(n->a, inner), substitute(n->b, inner));
    }
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// precedence levels for printing: + - (1), * / (2), unary - (3), ^ (4)
void print_node(const Node& n, std::string& out, int parent_prec);

void print_child(const NodePtr& n, std::string& out, int prec) { print_node(*n, out, prec); }

void print_const(Complex v, std::string& out, int parent_prec) {
    std::string s;
    bool composite = false;
    if (v.imag() == 0.0) {
        s = fmt_double(v.real());
        composite = v.real() < 0;
    } else if (v.real() == 0.0) {
        s = fmt_double(v.imag()) + "i";
        composite = v.imag() < 0;
    } else {
        s = fmt_double(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt_double(std::abs(v.imag())) + "i";
        composite = true;
    }
    if (composite && parent_prec > 1) {
        out += '(';
        out += s;
        out += ')';
    } else {
        out += s;
    }
}

void print_node(const Node& n, std::string& out, int parent_prec) {
    switch (n.kind) {
        case Node::Kind::Const: print_const(n.value, out, parent_prec); return;
        case Node::Kind::Var: out += 'z'; return;
        case Node::Kind::Neg: {
            bool paren = parent_prec > 3;
            if (paren) out += '(';
            out += '-';
            // a nested negation must re-enter through parentheses
            print_child(n.a, out, 4);
            if (paren) out += ')';
            return;
        }
        case Node::Kind::Add:
        case Node::Kind::Sub: {
            bool paren = parent_prec > 1;
            if (paren) out += '(';
            print_child(n.a, out, 1);
            out += (n.kind == Node::Kind::Add) ? '+' : '-';
            // right operand needs one level more because - is left associative
            print_child(n.b, out, 2);
            if (paren) out += ')';
            return;
        }
        case Node::Kind::Mul:
        case Node::Kind::Div: {
            bool paren = parent_prec > 2;
            if (paren) out += '(';
            print_child(n.a, out, 2);
            out += (n.kind == Node::Kind::Mul) ? '*' : '/';
            print_child(n.b, out, 3);
            if (paren) out += ')';
            return;
        }
        case Node::Kind::Pow: {
            bool paren = parent_prec > 4;
            if (paren) out += '(';
            print_child(n.a, out, 5);
            out += '^';
            out += std::to_string(n.exponent);
            if (paren) out += ')';
            return;
        }
        case Node::Kind::Fn: {
            out += fun_name(n.fn);
            out += '(';
            print_child(n.a, out, 0);
            out += ')';
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// recursive-descent parser

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (eat('+')) {
                e = mk_binary(Node::Kind::Add, e, term());
            } else if (eat('-')) {
                e = mk_binary(Node::Kind::Sub, e, term());
            } else {
                return e;
            }
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (eat('*')) {
                e = mk_binary(Node::Kind::Mul, e, factor());
            } else if (eat('/')) {
                e = mk_binary(Node::Kind::Div, e, factor());
            } else {
                return e;
            }
        }
    }

    NodePtr factor() {
        if (eat('-')) return mk_unary(Node::Kind::Neg, power());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!eat('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            pos_ = at;
            fail("non-integer exponent (use sqrt for fractional powers)");
        }
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos_;
        }
        // a fractional or expression exponent shows up as trailing '.' / '(' here
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == '(')) {
            fail("non-integer exponent (use sqrt for fractional powers)");
        }
        return mk_pow(base, static_cast<int>(neg ? -v : v));
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        // exponent part, only when digits follow
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;
            }
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.')) fail("malformed number");
        double v = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(), nullptr);
        if (pos_ < src_.size() && src_[pos_] == 'i') {
            ++pos_;
            return mk_const(Complex(0.0, v));
        }
        return mk_const(v);
    }

    NodePtr ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "z") return mk_var();
        if (name == "i") return mk_const(Complex(0.0, 1.0));
        Fun f;
        if (name == "exp") f = Fun::Exp;
        else if (name == "log") f = Fun::Log;
        else if (name == "sin") f = Fun::Sin;
        else if (name == "cos") f = Fun::Cos;
        else if (name == "sinh") f = Fun::Sinh;
        else if (name == "cosh") f = Fun::Cosh;
        else if (name == "sqrt") f = Fun::Sqrt;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return mk_fn(f, arg);
    }
};

}  // namespace

HolExpr::HolExpr() : node_(mk_const(0.0)) {}
HolExpr::HolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

HolExpr HolExpr::constant(Complex c) { return HolExpr(mk_const(c)); }
HolExpr HolExpr::variable() { return HolExpr(mk_var()); }

HolExpr HolExpr::derivative() const { return HolExpr(diff_node(node_)); }

Complex HolExpr::operator()(Complex t) const {
    Complex v = eval_node(*node_, t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw EvalError("non-finite value in evaluation");
    }
    return v;
}

HolExpr HolExpr::compose(const HolExpr& inner) const {
    return HolExpr(substitute(node_, inner.node_));
}

std::string HolExpr::str() const {
    std::string out;
    print_node(*node_, out, 0);
    return out;
}

HolExpr operator+(const HolExpr& a, const HolExpr& b) {
    return HolExpr(mk_binary(Node::Kind::Add, a.node_, b.node_));
}
HolExpr operator-(const HolExpr& a, const HolExpr& b) {
    return HolExpr(mk_binary(Node::Kind::Sub, a.node_, b.node_));
}
HolExpr operator-(const HolExpr& a) { return HolExpr(mk_unary(Node::Kind::Neg, a.node_)); }
HolExpr operator*(const HolExpr& a, const HolExpr& b) {
    return HolExpr(mk_binary(Node::Kind::Mul, a.node_, b.node_));
}
HolExpr operator/(const HolExpr& a, const HolExpr& b) {
    return HolExpr(mk_binary(Node::Kind::Div, a.node_, b.node_));
}
HolExpr pow(const HolExpr& a, int e) { return HolExpr(mk_pow(a.node_, e)); }
HolExpr exp(const HolExpr& a) { return HolExpr(mk_fn(Fun::Exp, a.node_)); }
HolExpr log(const HolExpr& a) { return HolExpr(mk_fn(Fun::Log, a.node_)); }
HolExpr sin(const HolExpr& a) { return HolExpr(mk_fn(Fun::Sin, a.node_)); }
HolExpr cos(const HolExpr& a) { return HolExpr(mk_fn(Fun::Cos, a.node_)); }
HolExpr sinh(const HolExpr& a) { return HolExpr(mk_fn(Fun::Sinh, a.node_)); }
HolExpr cosh(const HolExpr& a) { return HolExpr(mk_fn(Fun::Cosh, a.node_)); }
HolExpr sqrt(const HolExpr& a) { return HolExpr(mk_fn(Fun::Sqrt, a.node_)); }

HolExpr parse(std::string_view src) { return HolExpr(Parser(src).run()); }

HolExpr differentiate(const HolExpr& e) { return e.derivative(); }

Complex evaluate(const HolExpr& e, Complex t) { return e(t); }

}  // namespace maxsurf
