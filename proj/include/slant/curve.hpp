#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "slant/ambient.hpp"
#include "slant/expr.hpp"

namespace slant {

/// A curve given by one expression in t per coordinate, ordered
/// x_1..x_m, y_1..y_m, z_1..z_s.
struct CurveDef {
    Shape shape;
    std::vector<ExprPtr> components;
    std::string label;
    double t_min = 0.0;
    double t_max = 1.0;
};

/// Parses the key = value curve format:
///
///   # comment
///   m = 1
///   s = 4
///   label = Legendre curve
///   t_min = 0          (optional, default 0)
///   t_max = 0.8        (optional, default 1)
///   c1 = 2*integral(u, cos(exp(2*u)))
///   ...
///   c6 = ...
///
/// Throws ParseError (position is the byte offset in `text`) or Error(Parse).
CurveDef parse_curve(std::string_view text);
CurveDef load_curve(const std::filesystem::path& path);

/// Writes `curve` in the same format; parse_curve(format_curve(c)) is
/// structurally identical to c.
std::string format_curve(const CurveDef& curve);

/// Names and texts of the curves shipped in curves/ (compiled in).
const std::map<std::string, std::string>& bundled_curves();
CurveDef bundled_curve(const std::string& name);

/// f(t), f'(t), ..., f^(K)(t) for one component.
struct Jet {
    std::vector<double> values;

    int order() const { return static_cast<int>(values.size()) - 1; }
};

inline constexpr int kMaxJetOrder = 6;

/// Symbolic derivatives d^k c_i / dt^k, k = 0..order, built once.
class CurveDerivatives {
public:
    CurveDerivatives(const CurveDef& curve, int order);

    int order() const { return order_; }
    const ExprPtr& at(int component, int k) const { return table_[component][k]; }
    /// All derivative expressions, for IntegralCache::commit.
    const std::vector<ExprPtr>& all() const { return flat_; }

private:
    int order_;
    std::vector<std::vector<ExprPtr>> table_;
    std::vector<ExprPtr> flat_;
};

/// One jet per coordinate. Derivatives come from repeated symbolic
/// differentiation followed by numeric evaluation.
/// Throws Error(Usage) unless 1 <= order <= kMaxJetOrder.
std::vector<Jet> eval_jet(const CurveDef& curve, double t, int order, double quad_tol = kDefaultQuadTol);
std::vector<Jet> eval_jet(const CurveDerivatives& derivs, double t, double quad_tol = kDefaultQuadTol,
                          IntegralCache* cache = nullptr);

}  // namespace slant
