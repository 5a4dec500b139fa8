#pragma once

// Random expressions for the derivative property suite. Every generated
// expression is finite and smooth on [-1, 1].

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "slant/expr.hpp"

namespace slant::testing {

class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    std::string make(const std::string& var, int depth) {
        if (depth <= 0) return leaf(var);
        const int depth_left = depth - 1;
        switch (pick(12)) {
            case 0: return "(" + make(var, depth_left) + " + " + make(var, depth_left) + ")";
            case 1: return "(" + make(var, depth_left) + " - " + make(var, depth_left) + ")";
            case 2: return make(var, depth_left) + "*" + make(var, depth_left);
            case 3: return make(var, depth_left) + "/(2 + cos(" + make(var, depth_left) + "))";
            case 4: return "sin(" + make(var, depth_left) + ")";
            case 5: return "cos(" + make(var, depth_left) + ")";
            case 6: return "exp(sin(" + make(var, depth_left) + "))";
            case 7: return "ln(2 + sin(" + make(var, depth_left) + "))";
            case 8: return "sqrt(1 + (" + make(var, depth_left) + ")^2)";
            case 9: return "tan(0.5*sin(" + make(var, depth_left) + "))";
            case 10: return "(" + make(var, depth_left) + ")^" + std::to_string(2 + pick(2));
            default: {
                if (var == "v") return "cos(" + make(var, depth_left) + ")";  // two integral levels at most
                const std::string inner = var == "t" ? "u" : "v";
                return "integral(" + inner + ", " + make(inner, std::min(depth_left, 2)) + ")";
            }
        }
    }

private:
    std::string leaf(const std::string& var) {
        if (pick(3) == 0) {
            std::uniform_real_distribution<double> c(0.25, 2.0);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", c(rng_));
            return buf;
        }
        if (pick(2) == 0) return var;
        std::uniform_real_distribution<double> c(0.5, 1.5);
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.2f*%s", c(rng_), var.c_str());
        return buf;
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::mt19937_64 rng_;
};

struct PropertyCase {
    std::string text;
    double t = 0.0;
    double symbolic = 0.0;
    double finite_difference = 0.0;
    double relative_error = 0.0;
};

inline constexpr double kFdStep = 1e-3;
inline constexpr double kFdQuadTol = 1e-13;

inline double central5(const Expr& e, double t, double h = kFdStep) {
    auto f = [&](double x) { return evaluate(e, x, kFdQuadTol); };
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

/// Error relative to max(|f'|, 1): a unit floor keeps derivatives that
/// happen to be near zero from turning round-off into a failure.
inline std::vector<PropertyCase> run_derivative_suite(int cases, std::uint64_t seed) {
    ExprGen gen(seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> where(-0.9, 0.9);
    std::vector<PropertyCase> out;
    out.reserve(static_cast<std::size_t>(cases));
    for (int i = 0; i < cases; ++i) {
        PropertyCase c;
        c.text = gen.make("t", 2 + i % 3);
        c.t = where(rng);
        const ExprPtr e = parse_expression(c.text);
        c.symbolic = evaluate(*differentiate(e), c.t, kFdQuadTol);
        c.finite_difference = central5(*e, c.t);
        c.relative_error = std::abs(c.symbolic - c.finite_difference) / std::max(std::abs(c.symbolic), 1.0);
        out.push_back(c);
    }
    return out;
}

}  // namespace slant::testing
