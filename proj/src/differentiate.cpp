#include "slant/expr.hpp"

namespace slant {

namespace {

bool is_const(const ExprPtr& e, double v) { return e->kind == NodeKind::Constant && e->value == v; }
bool is_const(const ExprPtr& e) { return e->kind == NodeKind::Constant; }

// Folding constructors. They keep derivative trees from growing with
// multiplications by 0 and 1; no other simplification is attempted.

ExprPtr c(double v) { return Expr::constant(v); }

ExprPtr neg(const ExprPtr& a) {
    if (is_const(a)) return c(-a->value);
    if (a->kind == NodeKind::Negate) return a->lhs;
    return Expr::negate(a, a->span);
}

ExprPtr add(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (is_const(a) && is_const(b)) return c(a->value + b->value);
    if (b->kind == NodeKind::Negate) return Expr::binary(NodeKind::Subtract, a, b->lhs);
    return Expr::binary(NodeKind::Add, a, b);
}

ExprPtr sub(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return neg(b);
    if (is_const(a) && is_const(b)) return c(a->value - b->value);
    return Expr::binary(NodeKind::Subtract, a, b);
}

ExprPtr mul(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return c(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (is_const(a, -1.0)) return neg(b);
    if (is_const(b, -1.0)) return neg(a);
    if (is_const(a) && is_const(b)) return c(a->value * b->value);
    // Pull constants to the left so they fold: k1*(k2*x) -> (k1*k2)*x
    if (is_const(a) && b->kind == NodeKind::Multiply && is_const(b->lhs))
        return mul(c(a->value * b->lhs->value), b->rhs);
    if (is_const(b) && !is_const(a)) return mul(b, a);
    if (a->kind == NodeKind::Negate) return neg(mul(a->lhs, b));
    if (b->kind == NodeKind::Negate) return neg(mul(a, b->lhs));
    return Expr::binary(NodeKind::Multiply, a, b);
}

ExprPtr div(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(a, 0.0)) return c(0.0);
    if (is_const(b, 1.0)) return a;
    return Expr::binary(NodeKind::Divide, a, b);
}

ExprPtr pow(const ExprPtr& base, int n) {
    if (n == 0) return c(1.0);
    if (n == 1) return base;
    return Expr::power(base, n, base->span);
}

ExprPtr call(Function f, const ExprPtr& arg, SourceSpan span) { return Expr::call(f, arg, span); }

}  // namespace

ExprPtr substitute(const ExprPtr& e, std::string_view from, const ExprPtr& to) {
    switch (e->kind) {
        case NodeKind::Constant:
        case NodeKind::Integral: return e;
        case NodeKind::Variable: return e->name == from ? to : e;
        default: break;
    }
    ExprPtr l = e->lhs ? substitute(e->lhs, from, to) : nullptr;
    ExprPtr r = e->rhs ? substitute(e->rhs, from, to) : nullptr;
    if (l == e->lhs && r == e->rhs) return e;
    Expr copy = *e;
    copy.lhs = std::move(l);
    copy.rhs = std::move(r);
    return std::make_shared<const Expr>(std::move(copy));
}

ExprPtr differentiate(const ExprPtr& e, std::string_view variable) {
    auto d = [&](const ExprPtr& x) { return differentiate(x, variable); };
    switch (e->kind) {
        case NodeKind::Constant: return c(0.0);
        case NodeKind::Variable: return c(e->name == variable ? 1.0 : 0.0);
        case NodeKind::Negate: return neg(d(e->lhs));
        case NodeKind::Add: return add(d(e->lhs), d(e->rhs));
        case NodeKind::Subtract: return sub(d(e->lhs), d(e->rhs));
        case NodeKind::Multiply: return add(mul(d(e->lhs), e->rhs), mul(e->lhs, d(e->rhs)));
        case NodeKind::Divide:
            return div(sub(mul(d(e->lhs), e->rhs), mul(e->lhs, d(e->rhs))), pow(e->rhs, 2));
        case NodeKind::Power:
            return mul(mul(c(e->exponent), pow(e->lhs, e->exponent - 1)), d(e->lhs));
        case NodeKind::Call: {
            const ExprPtr& a = e->lhs;
            const ExprPtr da = d(a);
            if (is_const(da, 0.0)) return c(0.0);
            switch (e->function) {
                case Function::Sin: return mul(call(Function::Cos, a, e->span), da);
                case Function::Cos: return neg(mul(call(Function::Sin, a, e->span), da));
                case Function::Tan: return div(da, pow(call(Function::Cos, a, e->span), 2));
                case Function::Exp: return mul(e, da);
                case Function::Ln: return div(da, a);
                case Function::Sqrt: return div(da, mul(c(2.0), e));
            }
            break;
        }
        case NodeKind::Integral:
            // Fundamental theorem: the integrand at the upper limit.
            return substitute(e->lhs, e->name, Expr::variable(std::string(variable), e->span));
    }
    return c(0.0);
}

}  // namespace slant
