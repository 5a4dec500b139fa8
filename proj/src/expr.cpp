#include "slant/expr.hpp"

#include <cmath>
#include <cstdio>

namespace slant {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

int precedence(const Expr& e) {
    switch (e.kind) {
        case NodeKind::Add:
        case NodeKind::Subtract: return 1;
        case NodeKind::Multiply:
        case NodeKind::Divide: return 2;
        case NodeKind::Negate: return 3;
        case NodeKind::Power: return 4;
        case NodeKind::Constant: return e.value < 0.0 ? 0 : 5;
        default: return 5;
    }
}

void print(const Expr& e, int min_prec, std::string& out);

void print_wrapped(const Expr& e, int min_prec, std::string& out) {
    const bool paren = precedence(e) < min_prec;
    if (paren) out += '(';
    print(e, 0, out);
    if (paren) out += ')';
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const Expr& e, int /*min_prec*/, std::string& out) {
    switch (e.kind) {
        case NodeKind::Constant: out += format_number(e.value); return;
        case NodeKind::Variable: out += e.name; return;
        case NodeKind::Negate:
            out += '-';
            print_wrapped(*e.lhs, 3, out);
            return;
        case NodeKind::Add:
        case NodeKind::Subtract:
            print_wrapped(*e.lhs, 1, out);
            out += e.kind == NodeKind::Add ? " + " : " - ";
            print_wrapped(*e.rhs, 2, out);
            return;
        case NodeKind::Multiply:
        case NodeKind::Divide:
            print_wrapped(*e.lhs, 2, out);
            out += e.kind == NodeKind::Multiply ? "*" : "/";
            print_wrapped(*e.rhs, 3, out);
            return;
        case NodeKind::Power:
            print_wrapped(*e.lhs, 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        case NodeKind::Call:
            out += function_name(e.function);
            out += '(';
            print(*e.lhs, 0, out);
            out += ')';
            return;
        case NodeKind::Integral:
            out += "integral(";
            out += e.name;
            out += ", ";
            print(*e.lhs, 0, out);
            out += ')';
            return;
    }
}

}  // namespace

const char* function_name(Function f) {
    switch (f) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Tan: return "tan";
        case Function::Exp: return "exp";
        case Function::Ln: return "ln";
        case Function::Sqrt: return "sqrt";
    }
    return "?";
}

ExprPtr Expr::constant(double v, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Constant;
    e.value = v;
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::variable(std::string name, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Variable;
    e.name = std::move(name);
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::negate(ExprPtr a, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Negate;
    e.lhs = std::move(a);
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::binary(NodeKind kind, ExprPtr a, ExprPtr b, SourceSpan span) {
    Expr e;
    e.kind = kind;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::power(ExprPtr base, int exponent, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Power;
    e.lhs = std::move(base);
    e.exponent = exponent;
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::call(Function f, ExprPtr arg, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Call;
    e.function = f;
    e.lhs = std::move(arg);
    e.span = span;
    return make(std::move(e));
}

ExprPtr Expr::integral(std::string bound, ExprPtr integrand, SourceSpan span) {
    Expr e;
    e.kind = NodeKind::Integral;
    e.name = std::move(bound);
    e.lhs = std::move(integrand);
    e.span = span;
    std::string key;
    print(e, 0, key);
    e.integral_key = std::move(key);
    return make(std::move(e));
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Constant: return a.value == b.value;
        case NodeKind::Variable: return a.name == b.name;
        case NodeKind::Negate: return structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Power: return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Call: return a.function == b.function && structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Integral: return a.name == b.name && structurally_equal(*a.lhs, *b.lhs);
        default: return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    if (e.lhs) n += node_count(*e.lhs);
    if (e.rhs) n += node_count(*e.rhs);
    return n;
}

}  // namespace slant
