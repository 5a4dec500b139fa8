#include "slant/frenet.hpp"

#include <cmath>

#include "slant/error.hpp"
#include "slant/finite_diff.hpp"

namespace slant {

namespace {

Tangent values(const JetVec& v) {
    Tangent out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
    return out;
}

int min_order(const JetVec& v) {
    int o = Taylor::kMaxOrder;
    for (const auto& x : v) o = std::min(o, x.order());
    return o;
}

double g_inner(const Eigen::MatrixXd& g, const Tangent& a, const Tangent& b) { return a.dot(g * b); }

}  // namespace

CurveConnection::CurveConnection(const Shape& shape, std::span<const Taylor> position, bool flat)
    : shape_(shape), flat_(flat) {
    const int n = shape.dim();
    if (static_cast<int>(position.size()) != n) fail(ErrorKind::Usage, "position jet has wrong dimension");
    velocity_.reserve(n);
    for (const auto& c : position) {
        if (c.order() < 1) fail(ErrorKind::Usage, "position jets must have order >= 1");
        velocity_.push_back(c.derivative());
    }
    std::span<const Taylor> y(position.data() + shape.m, static_cast<std::size_t>(shape.m));
    if (!flat_) gamma_ = detail::christoffel_values<Taylor>(shape, y);
    metric_.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) metric_[i * n + j] = detail::metric_component<Taylor>(shape, y, i, j);
}

JetVec CurveConnection::nabla(const JetVec& v) const {
    const int n = shape_.dim();
    if (min_order(v) < 1) fail(ErrorKind::Usage, "jet order exhausted in covariant derivative");
    JetVec out(n);
    for (int k = 0; k < n; ++k) out[k] = v[k].derivative();
    if (flat_) return out;
    for (int k = 0; k < n; ++k) {
        Taylor acc = Taylor::zero(out[k].order());
        for (int i = 0; i < n; ++i) {
            Taylor row = Taylor::zero(out[k].order());
            for (int j = 0; j < n; ++j) {
                const Taylor& g = gamma_[(k * n + i) * n + j];
                if (g.is_zero()) continue;
                row += g * v[j];
            }
            acc += row * velocity_[i];
        }
        out[k] += acc;
    }
    return out;
}

Taylor CurveConnection::inner(const JetVec& a, const JetVec& b) const {
    const int n = shape_.dim();
    Taylor acc(0.0);
    for (int i = 0; i < n; ++i) {
        Taylor row(0.0);
        for (int j = 0; j < n; ++j) row += metric_[i * n + j] * b[j];
        acc += a[i] * row;
    }
    return acc;
}

JetVec CurveConnection::normal_part(const JetVec& v) const {
    const Taylor c = inner(v, velocity_);
    JetVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - c * velocity_[i];
    return out;
}

Tangent covariant_derivative(const Shape& shape, std::span<const Taylor> position, int k, bool flat) {
    if (k < 0) fail(ErrorKind::Usage, "covariant derivative order must be >= 0");
    for (const auto& c : position)
        if (c.order() < k + 1)
            fail(ErrorKind::Usage, "jet order " + std::to_string(c.order()) + " too low for nabla_T^" +
                                       std::to_string(k) + " T (needs " + std::to_string(k + 1) + ")");
    const CurveConnection conn(shape, position, flat);
    JetVec v = conn.velocity();
    for (int i = 0; i < k; ++i) v = conn.nabla(v);
    return values(v);
}

SpeedReport speed_report(const CurveSamples& samples, double speed_tol) {
    SpeedReport r;
    r.min_speed = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double v = norm(samples.shape, samples.point(j), samples.velocity(j));
        r.max_defect = std::max(r.max_defect, std::abs(1.0 - v));
        r.min_speed = std::min(r.min_speed, v);
        r.max_speed = std::max(r.max_speed, v);
        if (j > 0) r.arc_length += 0.5 * (prev + v) * (samples.t[j] - samples.t[j - 1]);
        prev = v;
    }
    r.unit_speed = r.max_defect < speed_tol;
    return r;
}

FrenetApparatus frenet_apparatus(const CurveSamples& samples, const FrenetTolerances& tol) {
    const Shape& shape = samples.shape;
    const std::size_t n = samples.size();
    if (n < 5) fail(ErrorKind::Usage, "grid too coarse for curvature derivatives (needs >= 5 samples)");
    if (samples.order < kMaxFrame) fail(ErrorKind::Usage, "Frenet apparatus needs position jets of order >= 5");
    const SpeedReport speed = speed_report(samples, tol.speed);
    if (!speed.unit_speed)
        fail(ErrorKind::Numeric, "curve is not unit speed: max | |gamma'| - 1 | = " + std::to_string(speed.max_defect));

    FrenetApparatus fa;
    fa.shape = shape;
    fa.t = samples.t;
    fa.h = samples.h;
    const int dim = shape.dim();
    const Tangent zero = Tangent::Zero(dim);

    for (std::size_t j = 0; j < n; ++j) {
        const Point p = samples.point(j);
        const Eigen::MatrixXd g = metric_matrix(shape, p);
        const CurveConnection conn(shape, samples.jets[j]);

        std::array<Tangent, kMaxFrame> d;
        JetVec v = conn.velocity();
        d[0] = values(v);
        for (int k = 1; k < kMaxFrame; ++k) {
            v = conn.nabla(v);
            d[k] = values(v);
        }

        std::array<Tangent, kMaxFrame> e;
        e.fill(zero);
        std::array<double, kMaxFrame - 1> kappa{};
        e[0] = d[0];
        int r = kMaxFrame;
        double kappa_product = 1.0;
        for (int k = 1; k < kMaxFrame; ++k) {
            Tangent res = d[k];
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i < k; ++i) res -= g_inner(g, res, e[i]) / g_inner(g, e[i], e[i]) * e[i];
            const double rn = std::sqrt(std::max(0.0, g_inner(g, res, res)));
            const double dn = std::sqrt(std::max(0.0, g_inner(g, d[k], d[k])));
            if (rn <= tol.rank * std::max(dn, 1.0)) {
                r = k;
                break;
            }
            e[k] = res / rn;
            kappa[k - 1] = g_inner(g, d[k], e[k]) / kappa_product;
            kappa_product *= kappa[k - 1];
        }

        for (int a = 0; a < r; ++a)
            for (int b = a; b < r; ++b)
                fa.max_frame_defect =
                    std::max(fa.max_frame_defect, std::abs(g_inner(g, e[a], e[b]) - (a == b ? 1.0 : 0.0)));

        fa.points.push_back(p);
        fa.order.push_back(r);
        fa.frame.push_back(e);
        fa.kappa.push_back(kappa);
        fa.nabla_t.push_back(d);
        fa.r = std::max(fa.r, r);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> k1(n), k2(n);
    for (std::size_t j = 0; j < n; ++j) {
        k1[j] = fa.kappa[j][0];
        k2[j] = fa.kappa[j][1];
    }
    fa.kappa1_d1.assign(n, nan);
    fa.kappa1_d2.assign(n, nan);
    fa.kappa2_d1.assign(n, nan);
    for (std::size_t j = 2; j + 2 < n; ++j) {
        fa.kappa1_d1[j] = central5_first(k1, j, fa.h);
        fa.kappa1_d2[j] = central5_second(k1, j, fa.h);
        fa.kappa2_d1[j] = central5_first(k2, j, fa.h);
    }
    return fa;
}

const OperatorField& MeanCurvatureOps::by_index(int i) const {
    switch (i) {
        case 0: return nabla_h;
        case 1: return nabla_perp_h;
        case 2: return laplacian_h;
        default: return laplacian_perp_h;
    }
}

namespace {

MeanCurvatureOps empty_ops() {
    MeanCurvatureOps ops;
    ops.nabla_h.name = "nabla_H";
    ops.nabla_perp_h.name = "nabla_perp_H";
    ops.laplacian_h.name = "laplacian_H";
    ops.laplacian_perp_h.name = "laplacian_perp_H";
    return ops;
}

void push(OperatorField& f, std::size_t j, double t, Tangent v) {
    f.index.push_back(j);
    f.t.push_back(t);
    f.value.push_back(std::move(v));
}

}  // namespace

MeanCurvatureOps mean_curvature_ops_formula(const FrenetApparatus& fa) {
    if (fa.size() < 5) fail(ErrorKind::Usage, "operator fields need at least 5 samples");
    MeanCurvatureOps ops = empty_ops();
    for (std::size_t j = fa.interior_begin(); j < fa.interior_end(); ++j) {
        const double k1 = fa.kappa_at(j, 1);
        const double k2 = fa.kappa_at(j, 2);
        const double k3 = fa.kappa_at(j, 3);
        const double k1p = fa.kappa1_d1[j];
        const double k1pp = fa.kappa1_d2[j];
        const double k2p = fa.kappa2_d1[j];
        const Tangent& e1 = fa.e(j, 1);
        const Tangent& e2 = fa.e(j, 2);
        const Tangent& e3 = fa.e(j, 3);
        const Tangent& e4 = fa.e(j, 4);

        const Tangent perp = k1p * e2 + k1 * k2 * e3;
        const Tangent lap_perp = (k1 * k2 * k2 - k1pp) * e2 - (2.0 * k1p * k2 + k1 * k2p) * e3 - k1 * k2 * k3 * e4;
        push(ops.nabla_h, j, fa.t[j], -k1 * k1 * e1 + perp);
        push(ops.nabla_perp_h, j, fa.t[j], perp);
        push(ops.laplacian_h, j, fa.t[j], 3.0 * k1 * k1p * e1 + k1 * k1 * k1 * e2 + lap_perp);
        push(ops.laplacian_perp_h, j, fa.t[j], lap_perp);
    }
    return ops;
}

MeanCurvatureOps mean_curvature_ops_direct(const CurveSamples& samples, const FrenetTolerances& tol) {
    const std::size_t n = samples.size();
    if (n < 5) fail(ErrorKind::Usage, "operator fields need at least 5 samples");
    if (samples.order < 4) fail(ErrorKind::Usage, "direct operators need position jets of order >= 4");
    const SpeedReport speed = speed_report(samples, tol.speed);
    if (!speed.unit_speed)
        fail(ErrorKind::Numeric, "curve is not unit speed: max | |gamma'| - 1 | = " + std::to_string(speed.max_defect));

    MeanCurvatureOps ops = empty_ops();
    for (std::size_t j = 0; j < n; ++j) {
        const CurveConnection conn(samples.shape, samples.jets[j]);
        const JetVec d1 = conn.nabla(conn.velocity());
        const JetVec d2 = conn.nabla(d1);
        const JetVec d3 = conn.nabla(d2);
        push(ops.nabla_h, j, samples.t[j], values(d2));
        push(ops.laplacian_h, j, samples.t[j], -values(d3));

        const JetVec a = conn.normal_part(d1);
        const JetVec b = conn.normal_part(conn.nabla(a));
        const JetVec c = conn.normal_part(conn.nabla(b));
        push(ops.nabla_perp_h, j, samples.t[j], values(b));
        push(ops.laplacian_perp_h, j, samples.t[j], -values(c));
    }
    return ops;
}

double field_difference(const CurveSamples& samples, const OperatorField& a, const OperatorField& b) {
    double worst = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.index.size(); ++i) {
        while (k < b.index.size() && b.index[k] < a.index[i]) ++k;
        if (k == b.index.size()) break;
        if (b.index[k] != a.index[i]) continue;
        const std::size_t j = a.index[i];
        worst = std::max(worst, norm(samples.shape, samples.point(j), a.value[i] - b.value[k]));
    }
    return worst;
}

double field_norm(const CurveSamples& samples, const OperatorField& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < f.index.size(); ++i)
        worst = std::max(worst, norm(samples.shape, samples.point(f.index[i]), f.value[i]));
    return worst;
}

}  // namespace slant
