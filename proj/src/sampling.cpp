#include "slant/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "slant/error.hpp"
#include "slant/finite_diff.hpp"

namespace slant {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

double central5_first(std::span<const double> f, std::size_t j, double h) {
    return (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
}

double central5_second(std::span<const double> f, std::size_t j, double h) {
    return (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) / (12.0 * h * h);
}

std::vector<double> Grid::points() const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[j] = at(j);
    return out;
}

void Grid::validate(int min_points) const {
    if (n < min_points)
        fail(ErrorKind::Usage, "grid needs at least " + std::to_string(min_points) + " points (got " +
                                   std::to_string(n) + ")");
    if (!(t_max > t_min) || !std::isfinite(t_min) || !std::isfinite(t_max))
        fail(ErrorKind::Usage, "grid requires finite t_min < t_max");
}

Point CurveSamples::point(std::size_t j) const {
    Vec p(shape.dim());
    for (int i = 0; i < shape.dim(); ++i) p[i] = jets[j][i].value();
    return Point(std::move(p));
}

Tangent CurveSamples::velocity(std::size_t j) const {
    Tangent v(shape.dim());
    for (int i = 0; i < shape.dim(); ++i) v[i] = jets[j][i].coeff(1);
    return v;
}

CurveSamples sample_curve(const CurveDef& curve, const Grid& grid, int order, double quad_tol, bool cumulative) {
    grid.validate();
    if (order < 1 || order > kMaxJetOrder)
        fail(ErrorKind::Usage, "jet order must lie in [1, " + std::to_string(kMaxJetOrder) + "]");
    const CurveDerivatives derivs(curve, order);
    CurveSamples out;
    out.shape = curve.shape;
    out.t = grid.points();
    out.h = grid.step();
    out.order = order;
    out.jets.reserve(out.t.size());

    IntegralCache cache;
    for (double t : out.t) {
        if (cumulative) cache.commit(derivs.all(), t, quad_tol);
        const auto jets = eval_jet(derivs, t, quad_tol, cumulative ? &cache : nullptr);
        std::vector<Taylor> row;
        row.reserve(jets.size());
        for (const auto& j : jets) row.push_back(Taylor::from_derivatives(j.values));
        out.jets.push_back(std::move(row));
    }
    return out;
}

CurveSamples sample_from_tangents(const SampledCurve& curve, int order) {
    const std::size_t n = curve.t.size();
    constexpr std::size_t kStencil = 9;
    if (n < kStencil) fail(ErrorKind::Usage, "sampled curve needs at least 9 samples");
    if (curve.points.size() != n || curve.tangents.size() != n)
        fail(ErrorKind::Usage, "sampled curve has inconsistent column lengths");
    if (order < 1 || order > kMaxJetOrder) fail(ErrorKind::Usage, "jet order out of range");
    const double h = (curve.t.back() - curve.t.front()) / static_cast<double>(n - 1);
    for (std::size_t j = 1; j < n; ++j)
        if (std::abs((curve.t[j] - curve.t[j - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            fail(ErrorKind::Usage, "sampled curve grid must be uniform");

    const int dim = curve.shape.dim();
    CurveSamples out;
    out.shape = curve.shape;
    out.t = curve.t;
    out.h = h;
    out.order = order;
    out.finite_difference_jets = true;
    out.jets.resize(n);

    // Stencil offsets in units of h, relative to the window start.
    std::vector<double> offsets(kStencil);
    for (std::size_t i = 0; i < kStencil; ++i) offsets[i] = static_cast<double>(i);

    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t half = kStencil / 2;
        const std::size_t start = std::clamp<std::size_t>(j < half ? 0 : j - half, 0, n - kStencil);
        const auto w = fd_weights(static_cast<double>(j - start), offsets, order - 1);
        std::vector<Taylor> row;
        row.reserve(dim);
        for (int c = 0; c < dim; ++c) {
            std::vector<double> d(order + 1, 0.0);
            d[0] = curve.points[j][c];
            d[1] = curve.tangents[j][c];
            for (int k = 1; k <= order - 1; ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < kStencil; ++i) acc += w[k][i] * curve.tangents[start + i][c];
                d[k + 1] = acc / std::pow(h, k);
            }
            row.push_back(Taylor::from_derivatives(d));
        }
        out.jets[j] = std::move(row);
    }
    return out;
}

}  // namespace slant
