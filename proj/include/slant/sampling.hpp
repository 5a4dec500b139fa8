#pragma once

#include <string>
#include <vector>

#include "slant/ambient.hpp"
#include "slant/curve.hpp"
#include "slant/jet.hpp"

namespace slant {

/// Uniform parameter grid t_j = t_min + j (t_max - t_min) / (n - 1).
struct Grid {
    double t_min = 0.0;
    double t_max = 1.0;
    int n = 512;

    double step() const { return (t_max - t_min) / (n - 1); }
    double at(int j) const { return j == n - 1 ? t_max : t_min + j * step(); }
    std::vector<double> points() const;
    /// Throws Error(Usage) unless n >= min_points and t_max > t_min.
    void validate(int min_points = 5) const;
};

/// A curve known only by samples of position and unit tangent on a uniform
/// grid, e.g. the output of the helix integrator. Extra frame columns are
/// carried along for output but never read by the analysis.
struct SampledCurve {
    Shape shape;
    std::vector<double> t;
    std::vector<Vec> points;
    std::vector<Vec> tangents;
    std::vector<std::vector<Vec>> frames;  // optional: frames[i][j] = E_{i+2} at t_j
    std::string label;
};

/// Taylor jets of the curve position at every grid sample.
struct CurveSamples {
    Shape shape;
    std::vector<double> t;
    double h = 0.0;
    int order = 0;
    std::vector<std::vector<Taylor>> jets;  // [sample][coordinate]
    bool finite_difference_jets = false;

    std::size_t size() const { return t.size(); }
    Point point(std::size_t j) const;
    Tangent velocity(std::size_t j) const;
};

inline constexpr int kAnalysisJetOrder = 5;

/// Jets from exact symbolic derivatives. With `cumulative` set, integral
/// nodes are accumulated along the grid from checkpoint to checkpoint.
CurveSamples sample_curve(const CurveDef& curve, const Grid& grid, int order = kAnalysisJetOrder,
                          double quad_tol = kDefaultQuadTol, bool cumulative = true);

/// Jets of a sampled curve. Position and first derivative come from the
/// samples; higher derivatives are finite differences of the tangent samples
/// (9-point stencils, shifted near the ends), so they carry truncation and
/// round-off amplification that exact jets do not.
CurveSamples sample_from_tangents(const SampledCurve& curve, int order = kAnalysisJetOrder);

}  // namespace slant
