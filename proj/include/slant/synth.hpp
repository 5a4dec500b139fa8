#pragma once

#include <numbers>

#include "slant/ambient.hpp"
#include "slant/sampling.hpp"

namespace slant {

/// Below this |cos theta| a theorem 1 angle counts as Legendre; kappa_1
/// would sit under the checklist tolerance.
inline constexpr double kMinHelixCos = 1e-4;

/// Slant helix with kappa_3 = 0 realizing the C-parallel conditions, either
/// in the tangent bundle (theorem 1, non-Legendre, angle theta) or in the
/// normal bundle (theorem 2, Legendre, free kappa_1).
struct HelixSpec {
    Shape shape{1, 2};
    int theorem = 1;
    double theta = 2.0 * std::numbers::pi / 3.0;  // ignored for theorem 2
    double kappa1 = 1.0;                           // theorem 2 only
    double t_min = 0.0;
    double t_max = 2.0 * std::numbers::pi;
    int samples = 512;
    double max_step = 1e-3;  // initial RK4 step bound

    /// Throws Error(Usage) on |cos theta| < kMinHelixCos or s cos^2 theta >= 1
    /// for theorem 1, kappa1 <= 0 for theorem 2, or a bad grid.
    void validate() const;
    double cos_theta() const;
    double target_kappa1() const;
    double target_kappa2() const;
    /// Expected C-parallel factor.
    double target_lambda() const;
};

struct HelixFrame {
    Point p;
    Tangent e1, e2, e3;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
};

/// Frame at the origin. u = 2 d/dx_1 is the unit horizontal seed.
HelixFrame initial_frame(const HelixSpec& spec);

struct IntegrationStats {
    int substeps = 0;  // RK4 steps per output interval
    double step = 0.0;
    int refinements = 0;
    double max_frame_drift = 0.0;     // max |g(E_a, E_b) - delta_ab|
    double max_speed_defect = 0.0;    // max | |gamma'| - 1 |
    double max_contact_drift = 0.0;   // max |eta^a(T) - eta^a(T_0)|
};

struct HelixCurve {
    HelixSpec spec;
    HelixFrame initial;
    SampledCurve curve;  // tangents = E_1, frames = {E_2, E_3}
    IntegrationStats stats;
};

/// Classical RK4 on (gamma, E_1, E_2, E_3). The step is halved until the
/// frame drift per unit parameter length is below `drift_tol`.
/// Throws Error(Numeric) if that does not happen within a few refinements.
HelixCurve integrate(const HelixSpec& spec, double drift_tol = 1e-8);

}  // namespace slant
