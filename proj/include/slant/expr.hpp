#pragma once

// Expression language for curve components.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := number | ident | func '(' expr ')'
//            | 'integral' '(' ident ',' expr ')' | '(' expr ')'
//   func    := sin | cos | tan | exp | ln | sqrt
//
// integral(u, f) denotes the definite integral of f(u) du from 0 to the
// enclosing variable (t at top level, the outer bound variable inside another
// integrand). An integrand may reference only its own bound variable; deeper
// integrals bring their own. Consequently every integral node is a function of
// its upper limit alone, differentiation needs no Leibniz rule, and evaluating
// any node only ever needs the value of the innermost enclosing variable.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

namespace slant {

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class NodeKind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call, Integral };

enum class Function { Sin, Cos, Tan, Exp, Ln, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;        // Constant
    std::string name;          // Variable, or bound variable of Integral
    Function function = Function::Sin;
    int exponent = 1;          // Power
    ExprPtr lhs;               // operand, left operand, base, argument, integrand
    ExprPtr rhs;               // right operand
    SourceSpan span;
    std::string integral_key;  // canonical text of an Integral node; cache key

    static ExprPtr constant(double v, SourceSpan span = {});
    static ExprPtr variable(std::string name, SourceSpan span = {});
    static ExprPtr negate(ExprPtr a, SourceSpan span = {});
    static ExprPtr binary(NodeKind kind, ExprPtr a, ExprPtr b, SourceSpan span = {});
    static ExprPtr power(ExprPtr base, int exponent, SourceSpan span = {});
    static ExprPtr call(Function f, ExprPtr arg, SourceSpan span = {});
    static ExprPtr integral(std::string bound, ExprPtr integrand, SourceSpan span = {});
};

const char* function_name(Function f);

/// Parses `text` with `variable` as the only admissible free variable.
/// Throws ParseError on syntax errors, unknown functions or identifiers, and
/// integrands that reference an outer variable.
ExprPtr parse_expression(std::string_view text, std::string_view variable = "t");

/// Text that reparses to a structurally equal tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Exact derivative with respect to the enclosing variable `variable`.
/// d/dt integral(u, f(u)) = f(t).
ExprPtr differentiate(const ExprPtr& e, std::string_view variable = "t");

/// Replaces free occurrences of `from` by `to`; does not descend into
/// integrals (their integrands cannot see outer variables).
ExprPtr substitute(const ExprPtr& e, std::string_view from, const ExprPtr& to);

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kQuadMaxDepth = 40;

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
/// Throws Error(Numeric) if the depth limit is reached unconverged.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = kQuadMaxDepth);

/// Checkpoints of integral values along an increasing sampling pass.
///
/// Every integral node is a function F of its upper limit only. Once F(a) is
/// known, F(b) = F(a) + integral_a^b, which is cheap when b is close to a.
/// Checkpoints are added with commit() at each grid parameter; lookups use the
/// nearest checkpoint (0 with F = 0 is implicit). Not thread-safe; one
/// instance per sampling pass.
class IntegralCache {
public:
    /// Records F(x) for every integral node reachable from `roots`.
    void commit(const std::vector<ExprPtr>& roots, double x, double quad_tol);

    std::size_t checkpoint_count() const;

    // Used by the evaluator.
    std::pair<double, double> nearest(const std::string& key, double x) const;
    void store(const std::string& key, double x, double value) { table_[key][x] = value; }

private:
    std::unordered_map<std::string, std::map<double, double>> table_;
};

/// Evaluates `e` with its enclosing variable set to `x`. Integral nodes use
/// adaptive Simpson at `quad_tol`; if `cache` is given, integrals restart
/// from the nearest checkpoint instead of 0.
/// Throws Error(Domain) for ln/sqrt of negative values or division by zero.
double evaluate(const Expr& e, double x, double quad_tol = kDefaultQuadTol,
                IntegralCache* cache = nullptr);

/// Number of nodes; used to keep derivative growth in check in tests.
std::size_t node_count(const Expr& e);

}  // namespace slant
