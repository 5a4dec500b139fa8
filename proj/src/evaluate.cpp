#include <cmath>
#include <limits>

#include "slant/error.hpp"
#include "slant/expr.hpp"

namespace slant {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    int evaluations = 0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (!std::isfinite(delta)) fail(ErrorKind::Domain, "non-finite integrand value in quadrature");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    // Interval too small to split further in double precision.
    if (std::abs(b - a) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
        return left + right + delta / 15.0;
    if (depth <= 0)
        fail(ErrorKind::Numeric, "adaptive Simpson quadrature did not converge on [" + std::to_string(a) + ", " +
                                     std::to_string(b) + "]");
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

std::string where(const Expr& e) { return " at position " + std::to_string(e.span.begin); }

double eval_node(const Expr& e, double x, double tol, IntegralCache* cache);

double eval_integral(const Expr& e, double x, double tol, IntegralCache* cache) {
    const Expr& integrand = *e.lhs;
    auto f = [&](double u) { return eval_node(integrand, u, tol, cache); };
    if (!cache) return adaptive_simpson(f, 0.0, x, tol);
    const auto [from, base] = cache->nearest(e.integral_key, x);
    if (from == x) return base;
    return base + adaptive_simpson(f, from, x, tol);
}

double eval_node(const Expr& e, double x, double tol, IntegralCache* cache) {
    switch (e.kind) {
        case NodeKind::Constant: return e.value;
        case NodeKind::Variable: return x;
        case NodeKind::Negate: return -eval_node(*e.lhs, x, tol, cache);
        case NodeKind::Add: return eval_node(*e.lhs, x, tol, cache) + eval_node(*e.rhs, x, tol, cache);
        case NodeKind::Subtract: return eval_node(*e.lhs, x, tol, cache) - eval_node(*e.rhs, x, tol, cache);
        case NodeKind::Multiply: return eval_node(*e.lhs, x, tol, cache) * eval_node(*e.rhs, x, tol, cache);
        case NodeKind::Divide: {
            const double num = eval_node(*e.lhs, x, tol, cache);
            const double den = eval_node(*e.rhs, x, tol, cache);
            if (den == 0.0) fail(ErrorKind::Domain, "division by zero" + where(e));
            return num / den;
        }
        case NodeKind::Power: {
            const double b = eval_node(*e.lhs, x, tol, cache);
            if (b == 0.0 && e.exponent < 0) fail(ErrorKind::Domain, "zero raised to a negative power" + where(e));
            return std::pow(b, e.exponent);
        }
        case NodeKind::Call: {
            const double a = eval_node(*e.lhs, x, tol, cache);
            switch (e.function) {
                case Function::Sin: return std::sin(a);
                case Function::Cos: return std::cos(a);
                case Function::Tan: {
                    const double c = std::cos(a);
                    if (c == 0.0) fail(ErrorKind::Domain, "tan pole" + where(e));
                    return std::sin(a) / c;
                }
                case Function::Exp: return std::exp(a);
                case Function::Ln:
                    if (!(a > 0.0)) fail(ErrorKind::Domain, "ln of non-positive value" + where(e));
                    return std::log(a);
                case Function::Sqrt:
                    if (a < 0.0) fail(ErrorKind::Domain, "sqrt of negative value" + where(e));
                    return std::sqrt(a);
            }
            break;
        }
        case NodeKind::Integral: return eval_integral(e, x, tol, cache);
    }
    fail(ErrorKind::Internal, "unknown expression node");
}

void collect_integrals(const Expr& e, std::vector<const Expr*>& out) {
    if (e.kind == NodeKind::Integral) out.push_back(&e);
    if (e.lhs) collect_integrals(*e.lhs, out);
    if (e.rhs) collect_integrals(*e.rhs, out);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    if (!(tol > 0.0)) fail(ErrorKind::Usage, "quadrature tolerance must be positive");
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, tol, max_depth);
    SimpsonState st{f};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(st, a, b, fa, fm, fb, whole, tol, max_depth);
}

double evaluate(const Expr& e, double x, double quad_tol, IntegralCache* cache) {
    if (!(quad_tol > 0.0)) fail(ErrorKind::Usage, "quadrature tolerance must be positive");
    const double v = eval_node(e, x, quad_tol, cache);
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "non-finite value" + where(e));
    return v;
}

std::pair<double, double> IntegralCache::nearest(const std::string& key, double x) const {
    std::pair<double, double> best{0.0, 0.0};
    auto it = table_.find(key);
    if (it == table_.end()) return best;
    const auto& points = it->second;
    auto hi = points.lower_bound(x);
    auto consider = [&](std::map<double, double>::const_iterator p) {
        if (std::abs(p->first - x) < std::abs(best.first - x)) best = *p;
    };
    if (hi != points.end()) consider(hi);
    if (hi != points.begin()) consider(std::prev(hi));
    return best;
}

void IntegralCache::commit(const std::vector<ExprPtr>& roots, double x, double quad_tol) {
    std::vector<const Expr*> nodes;
    for (const auto& r : roots) collect_integrals(*r, nodes);
    // Compute all values first so that a node shared by several roots is
    // evaluated against the same checkpoints.
    std::vector<std::pair<std::string, double>> values;
    for (const Expr* n : nodes) {
        if (table_.count(n->integral_key) && table_[n->integral_key].count(x)) continue;
        values.emplace_back(n->integral_key, eval_integral(*n, x, quad_tol, this));
    }
    for (auto& [key, v] : values) store(key, x, v);
}

std::size_t IntegralCache::checkpoint_count() const {
    std::size_t n = 0;
    for (const auto& [k, v] : table_) n += v.size();
    return n;
}

}  // namespace slant
