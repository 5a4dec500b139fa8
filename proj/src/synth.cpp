#include "slant/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include "slant/error.hpp"

namespace slant {

namespace {

constexpr int kMaxRefinements = 8;

double sign_flip(double c) { return c < 0.0 ? 1.0 : -1.0; }

}  // namespace

void HelixSpec::validate() const {
    shape.validate();
    if (theorem != 1 && theorem != 2) fail(ErrorKind::Usage, "synth supports theorem 1 or 2");
    if (!(t_max > t_min) || !std::isfinite(t_min) || !std::isfinite(t_max))
        fail(ErrorKind::Usage, "synth needs a finite parameter range with t_min < t_max");
    if (samples < 16) fail(ErrorKind::Usage, "synth needs at least 16 output samples");
    if (!(max_step > 0.0)) fail(ErrorKind::Usage, "step bound must be positive");
    if (theorem == 1) {
        const double c = cos_theta();
        if (!std::isfinite(theta)) fail(ErrorKind::Usage, "theta must be finite");
        if (std::abs(c) < kMinHelixCos) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "theorem 1 needs cos(theta) != 0 (got %.3g, a Legendre angle)", c);
            fail(ErrorKind::Usage, buf);
        }
        if (shape.s * c * c >= 1.0)
            fail(ErrorKind::Usage, "theorem 1 needs s cos^2(theta) < 1, i.e. |cos(theta)| < 1/sqrt(s)");
    } else if (!(kappa1 > 0.0) || !std::isfinite(kappa1)) {
        fail(ErrorKind::Usage, "theorem 2 needs kappa1 > 0");
    }
}

double HelixSpec::cos_theta() const { return theorem == 2 ? 0.0 : std::cos(theta); }

double HelixSpec::target_kappa1() const {
    if (theorem == 2) return kappa1;
    const double c = cos_theta();
    return shape.s * std::abs(c) * std::sqrt(1.0 - shape.s * c * c);
}

double HelixSpec::target_kappa2() const {
    const double c = cos_theta();
    return std::sqrt(static_cast<double>(shape.s)) * (1.0 - shape.s * c * c);
}

double HelixSpec::target_lambda() const {
    const double k1 = target_kappa1();
    if (theorem == 2) return k1 * target_kappa2() / std::sqrt(static_cast<double>(shape.s));
    return -k1 * k1 / (shape.s * cos_theta());
}

HelixFrame initial_frame(const HelixSpec& spec) {
    spec.validate();
    const Shape& sh = spec.shape;
    const double s = sh.s;
    HelixFrame f;
    f.p = Point::origin(sh);
    Tangent u = Tangent::Zero(sh.dim());
    u[sh.x_index(0)] = 2.0;
    const Tangent xs = xi_sum(sh);
    f.kappa1 = spec.target_kappa1();
    f.kappa2 = spec.target_kappa2();
    if (spec.theorem == 2) {
        f.e1 = u;
        f.e2 = phi(sh, f.p, u);
        f.e3 = xs / std::sqrt(s);
        return f;
    }
    // E_2 = +phi T / |phi T| when cos theta < 0; the opposite sign keeps
    // kappa_1 > 0 when cos theta > 0.
    const double c = spec.cos_theta();
    const double w = std::sqrt(1.0 - s * c * c);
    const double sigma = sign_flip(c);
    f.e1 = c * xs + w * u;
    const Tangent pt = phi(sh, f.p, f.e1);
    f.e2 = sigma * pt / norm(sh, f.p, pt);
    f.e3 = sigma * (xs - s * c * f.e1) / (std::sqrt(s) * w);
    return f;
}

HelixCurve integrate(const HelixSpec& spec, double drift_tol) {
    const HelixFrame f0 = initial_frame(spec);
    const Shape& sh = spec.shape;
    const double k1 = f0.kappa1;
    const double k2 = f0.kappa2;

    using State = std::array<Vec, 4>;  // gamma, E1, E2, E3
    auto rhs = [&](const State& y) {
        const Christoffel gam = christoffel(sh, Point(y[0]));
        State d;
        d[0] = y[1];
        d[1] = -gam.contract(y[1], y[1]) + k1 * y[2];
        d[2] = -gam.contract(y[1], y[2]) - k1 * y[1] + k2 * y[3];
        d[3] = -gam.contract(y[1], y[3]) - k2 * y[2];
        return d;
    };
    auto axpy = [](const State& y, double a, const State& k) {
        State r;
        for (int i = 0; i < 4; ++i) r[i] = y[i] + a * k[i];
        return r;
    };

    const double length = spec.t_max - spec.t_min;
    const double dt_out = length / (spec.samples - 1);
    int substeps = std::max(1, static_cast<int>(std::ceil(dt_out / spec.max_step)));
    const Grid grid{spec.t_min, spec.t_max, spec.samples};

    std::vector<double> eta0(sh.s);
    for (int a = 0; a < sh.s; ++a) eta0[a] = eta(sh, a, f0.p, f0.e1);

    for (int attempt = 0; attempt <= kMaxRefinements; ++attempt, substeps *= 2) {
        HelixCurve out;
        out.spec = spec;
        out.initial = f0;
        out.curve.shape = sh;
        out.curve.label = "theorem " + std::to_string(spec.theorem) + " helix";
        out.curve.frames.assign(2, {});
        IntegrationStats& st = out.stats;
        st.substeps = substeps;
        st.step = dt_out / substeps;
        st.refinements = attempt;

        State y{f0.p.coords(), f0.e1, f0.e2, f0.e3};
        const double h = st.step;
        for (int j = 0; j < spec.samples; ++j) {
            if (j > 0)
                for (int k = 0; k < substeps; ++k) {
                    const State a = rhs(y);
                    const State b = rhs(axpy(y, 0.5 * h, a));
                    const State c = rhs(axpy(y, 0.5 * h, b));
                    const State d = rhs(axpy(y, h, c));
                    for (int i = 0; i < 4; ++i) y[i] += (h / 6.0) * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
                }
            const Point p(y[0]);
            for (int a = 1; a < 4; ++a)
                for (int b = a; b < 4; ++b)
                    st.max_frame_drift =
                        std::max(st.max_frame_drift, std::abs(metric(sh, p, y[a], y[b]) - (a == b ? 1.0 : 0.0)));
            st.max_speed_defect = std::max(st.max_speed_defect, std::abs(norm(sh, p, y[1]) - 1.0));
            for (int a = 0; a < sh.s; ++a)
                st.max_contact_drift = std::max(st.max_contact_drift, std::abs(eta(sh, a, p, y[1]) - eta0[a]));
            out.curve.t.push_back(grid.at(j));
            out.curve.points.push_back(y[0]);
            out.curve.tangents.push_back(y[1]);
            out.curve.frames[0].push_back(y[2]);
            out.curve.frames[1].push_back(y[3]);
        }
        if (st.max_frame_drift / length < drift_tol) return out;
    }
    fail(ErrorKind::Numeric, "helix integration: frame drift stays above tolerance after " +
                                 std::to_string(kMaxRefinements) + " step halvings");
}

}  // namespace slant
