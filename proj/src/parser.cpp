#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "slant/error.hpp"
#include "slant/expr.hpp"

namespace slant {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    ExprPtr parse_expr() {
        skip_space();
        const std::size_t start = pos_;
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(NodeKind::Add, lhs, parse_term(), {start, pos_});
            } else if (accept('-')) {
                lhs = Expr::binary(NodeKind::Subtract, lhs, parse_term(), {start, pos_});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        skip_space();
        const std::size_t start = pos_;
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(NodeKind::Multiply, lhs, parse_unary(), {start, pos_});
            } else if (accept('/')) {
                lhs = Expr::binary(NodeKind::Divide, lhs, parse_unary(), {start, pos_});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        skip_space();
        const std::size_t start = pos_;
        if (accept('-')) return Expr::negate(parse_unary(), {start, pos_});
        return parse_power();
    }

    ExprPtr parse_power() {
        skip_space();
        const std::size_t start = pos_;
        ExprPtr base = parse_primary();
        if (!accept('^')) return base;
        skip_space();
        const bool negative = accept('-');
        skip_space();
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) throw ParseError("expected integer exponent", digits);
        int exponent = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, exponent);
        if (ec != std::errc()) throw ParseError("exponent out of range", digits);
        return Expr::power(base, negative ? -exponent : exponent, {start, pos_});
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digits = [&] {
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        };
        digits();
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            digits();
        }
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                p = q;
                digits();
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, v);
        if (ec != std::errc() || ptr != text_.data() + p) throw ParseError("malformed number", start);
        pos_ = p;
        return Expr::constant(v, {start, p});
    }

    std::string parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    ExprPtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);

        const std::string ident = parse_identifier();
        skip_space();
        const bool is_call = pos_ < text_.size() && text_[pos_] == '(';

        if (ident == "integral") {
            if (!is_call) throw ParseError("expected '(' after integral", pos_);
            ++pos_;
            skip_space();
            const std::size_t name_at = pos_;
            if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                throw ParseError("expected bound variable name", pos_);
            std::string bound = parse_identifier();
            if (bound == "pi" || bound == "integral" || is_function(bound))
                throw ParseError("'" + bound + "' cannot be used as a bound variable", name_at);
            expect(',');
            skip_space();
            const std::size_t integrand_at = pos_;
            ExprPtr integrand = parse_expr();
            expect(')');
            check_scope(*integrand, bound, integrand_at);
            return Expr::integral(bound, integrand, {start, pos_});
        }
        if (is_call) {
            Function f;
            if (!lookup_function(ident, f)) throw ParseError("unknown function '" + ident + "'", start);
            ++pos_;
            ExprPtr arg = parse_expr();
            expect(')');
            return Expr::call(f, arg, {start, pos_});
        }
        if (ident == "pi") return Expr::constant(std::numbers::pi, {start, pos_});
        if (is_function(ident)) throw ParseError("function '" + ident + "' needs an argument", start);
        return Expr::variable(ident, {start, pos_});
    }

    static bool is_function(const std::string& name) {
        Function f;
        return lookup_function(name, f);
    }

    static bool lookup_function(const std::string& name, Function& f) {
        static const std::pair<const char*, Function> table[] = {
            {"sin", Function::Sin}, {"cos", Function::Cos}, {"tan", Function::Tan},
            {"exp", Function::Exp}, {"ln", Function::Ln},   {"sqrt", Function::Sqrt}};
        for (const auto& [n, fn] : table) {
            if (name == n) {
                f = fn;
                return true;
            }
        }
        return false;
    }

    // Free variables of an integrand must be exactly its bound variable.
    void check_scope(const Expr& e, const std::string& bound, std::size_t fallback_pos) {
        if (e.kind == NodeKind::Integral) return;  // checked when it was built
        if (e.kind == NodeKind::Variable && e.name != bound) {
            throw ParseError("integrand of integral(" + bound + ", ...) references outer variable '" +
                                 e.name + "'",
                             e.span.end > e.span.begin ? e.span.begin : fallback_pos);
        }
        if (e.lhs) check_scope(*e.lhs, bound, fallback_pos);
        if (e.rhs) check_scope(*e.rhs, bound, fallback_pos);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void check_top_level(const Expr& e, std::string_view variable) {
    if (e.kind == NodeKind::Integral) return;
    if (e.kind == NodeKind::Variable && e.name != variable)
        throw ParseError("unknown identifier '" + e.name + "'", e.span.begin);
    if (e.lhs) check_top_level(*e.lhs, variable);
    if (e.rhs) check_top_level(*e.rhs, variable);
}

}  // namespace

ExprPtr parse_expression(std::string_view text, std::string_view variable) {
    Parser parser(text);
    ExprPtr e = parser.parse_all();
    check_top_level(*e, variable);
    return e;
}

}  // namespace slant
