#pragma once

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "slant/ambient.hpp"
#include "slant/jet.hpp"
#include "slant/sampling.hpp"

namespace slant {

using JetVec = std::vector<Taylor>;

/// Levi-Civita connection pulled back along a curve given by position jets.
/// Everything is carried as truncated Taylor series, so covariant derivatives
/// are exact up to the jet order (each derivative costs one order).
class CurveConnection {
public:
    /// `flat` replaces the Christoffel symbols by zero (Euclidean oracle).
    CurveConnection(const Shape& shape, std::span<const Taylor> position, bool flat = false);

    const JetVec& velocity() const { return velocity_; }
    /// nabla_T V = dV/dt + Gamma(gamma_dot, V).
    JetVec nabla(const JetVec& v) const;
    /// g(a, b) along the curve.
    Taylor inner(const JetVec& a, const JetVec& b) const;
    /// V - g(V, T) T.
    JetVec normal_part(const JetVec& v) const;

private:
    Shape shape_;
    JetVec velocity_;
    std::vector<Taylor> gamma_;  // Christoffel symbols, (k * n + i) * n + j
    std::vector<Taylor> metric_;
    bool flat_;
};

/// nabla_T^k T at the expansion point of `position`.
/// Throws Error(Usage) if the jet order is below k + 1.
Tangent covariant_derivative(const Shape& shape, std::span<const Taylor> position, int k, bool flat = false);

struct FrenetTolerances {
    double speed = 1e-6;  // unit-speed requirement
    double rank = 1e-8;   // Gram-Schmidt residual, relative to max(|v|, 1)
};

inline constexpr int kMaxFrame = 5;

struct SpeedReport {
    double max_defect = 0.0;  // max |1 - |gamma_dot|_g|
    double min_speed = 0.0;
    double max_speed = 0.0;
    double arc_length = 0.0;  // trapezoid estimate over the grid
    bool unit_speed = false;
};

SpeedReport speed_report(const CurveSamples& samples, double speed_tol);

/// Frenet frame and curvatures along a sampled curve.
///
/// E_1 = gamma_dot; E_2..E_5 come from Gram-Schmidt of nabla_T^k T, k = 1..4,
/// in the metric g, oriented so that every kappa_i > 0. The osculating order
/// r at a sample is the first k whose residual falls below the rank
/// tolerance (r = 5 means "at least 5"). Curvature derivatives are 5-point
/// central differences and are NaN on the two samples at each end.
struct FrenetApparatus {
    Shape shape;
    std::vector<double> t;
    double h = 0.0;
    std::vector<Point> points;
    int r = 0;                                        // max over samples
    std::vector<int> order;                           // per sample
    std::vector<std::array<Tangent, kMaxFrame>> frame;  // E_1..E_5, zero if absent
    std::vector<std::array<double, kMaxFrame - 1>> kappa;  // kappa_1..kappa_4, 0 if absent
    std::vector<std::array<Tangent, kMaxFrame>> nabla_t;   // nabla_T^k T, k = 0..4
    std::vector<double> kappa1_d1, kappa1_d2, kappa2_d1;
    double max_frame_defect = 0.0;  // max |g(E_a, E_b) - delta_ab| over present vectors

    std::size_t size() const { return t.size(); }
    std::size_t interior_begin() const { return 2; }
    std::size_t interior_end() const { return t.size() - 2; }
    double kappa_at(std::size_t j, int i) const { return kappa[j][i - 1]; }
    const Tangent& e(std::size_t j, int i) const { return frame[j][i - 1]; }
};

/// Throws Error(Numeric) if the curve is not unit speed within tol.speed and
/// Error(Usage) for grids with fewer than 5 samples or jets of order < 5.
FrenetApparatus frenet_apparatus(const CurveSamples& samples, const FrenetTolerances& tol = {});

/// Values of an operator along the interior samples of the grid.
struct OperatorField {
    std::string name;
    std::vector<std::size_t> index;  // grid sample indices
    std::vector<double> t;
    std::vector<Tangent> value;
};

struct MeanCurvatureOps {
    OperatorField nabla_h;         // nabla_T H
    OperatorField nabla_perp_h;    // nabla^perp_T H
    OperatorField laplacian_h;     // Delta H
    OperatorField laplacian_perp_h;  // Delta^perp H

    const OperatorField& by_index(int i) const;
};

/// The four operators expanded in the Frenet frame, using the finite
/// difference curvature derivatives. Terms on absent frame vectors vanish.
MeanCurvatureOps mean_curvature_ops_formula(const FrenetApparatus& fa);

/// The same operators by iterated covariant differentiation:
/// nabla_T H = nabla_T^2 T, Delta H = -nabla_T^3 T, and the normal versions
/// with the tangential part removed after every differentiation step.
/// Needs no stencils, so every grid sample is covered.
MeanCurvatureOps mean_curvature_ops_direct(const CurveSamples& samples, const FrenetTolerances& tol = {});

/// Max g-norm of a - b over the samples covered by both fields.
double field_difference(const CurveSamples& samples, const OperatorField& a, const OperatorField& b);
/// Max g-norm of a field over its samples.
double field_norm(const CurveSamples& samples, const OperatorField& f);

}  // namespace slant
