#include "slant/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace slant {

namespace {

void check_alpha(const Shape& shape, int alpha) {
    if (alpha < 0 || alpha >= shape.s)
        fail(ErrorKind::Usage, "characteristic index " + std::to_string(alpha) +
                                   " out of range for s = " + std::to_string(shape.s));
}

void check_dim(const Shape& shape, const Vec& v) {
    if (v.size() != shape.dim())
        fail(ErrorKind::Usage, "vector has " + std::to_string(v.size()) +
                                   " components, ambient dimension is " +
                                   std::to_string(shape.dim()));
}

std::span<const double> y_block(const Shape& shape, const Point& p) {
    return {p.coords().data() + shape.m, static_cast<std::size_t>(shape.m)};
}

}  // namespace

void Shape::validate() const {
    if (m < 1) fail(ErrorKind::Usage, "m must be >= 1 (got " + std::to_string(m) + ")");
    if (s < 1) fail(ErrorKind::Usage, "s must be >= 1 (got " + std::to_string(s) + ")");
}

double eta(const Shape& shape, int alpha, const Point& p, const Tangent& v) {
    check_alpha(shape, alpha);
    check_dim(shape, v);
    double acc = v[shape.z_index(alpha)];
    for (int i = 0; i < shape.m; ++i) acc -= p.y(shape, i) * v[shape.x_index(i)];
    return 0.5 * acc;
}

Tangent xi(const Shape& shape, int alpha) {
    check_alpha(shape, alpha);
    Tangent v = Tangent::Zero(shape.dim());
    v[shape.z_index(alpha)] = 2.0;
    return v;
}

Tangent xi_sum(const Shape& shape) {
    Tangent v = Tangent::Zero(shape.dim());
    v.tail(shape.s).setConstant(2.0);
    return v;
}

Tangent phi(const Shape& shape, const Point& p, const Tangent& v) {
    check_dim(shape, v);
    Tangent out = Tangent::Zero(shape.dim());
    double zc = 0.0;
    for (int i = 0; i < shape.m; ++i) {
        const double X = v[shape.x_index(i)];
        const double Y = v[shape.y_index(i)];
        out[shape.x_index(i)] = Y;
        out[shape.y_index(i)] = -X;
        zc += Y * p.y(shape, i);
    }
    out.tail(shape.s).setConstant(zc);
    return out;
}

Eigen::MatrixXd metric_matrix(const Shape& shape, const Point& p) {
    const int n = shape.dim();
    const auto y = y_block(shape, p);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = detail::metric_component<double>(shape, y, i, j);
    return g;
}

double metric(const Shape& shape, const Point& p, const Tangent& u, const Tangent& v) {
    check_dim(shape, u);
    check_dim(shape, v);
    // g(u, v) = sum_a eta^a(u) eta^a(v) + 1/4 sum (u_x v_x + u_y v_y)
    double flat = 0.0;
    for (int i = 0; i < 2 * shape.m; ++i) flat += u[i] * v[i];
    double acc = 0.25 * flat;
    for (int a = 0; a < shape.s; ++a) acc += eta(shape, a, p, u) * eta(shape, a, p, v);
    return acc;
}

double norm(const Shape& shape, const Point& p, const Tangent& v) {
    return std::sqrt(std::max(0.0, metric(shape, p, v, v)));
}

Tangent Christoffel::contract(const Tangent& u, const Tangent& v) const {
    Tangent out = Tangent::Zero(n_);
    for (int k = 0; k < n_; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i) {
            if (u[i] == 0.0) continue;
            for (int j = 0; j < n_; ++j) acc += (*this)(k, i, j) * u[i] * v[j];
        }
        out[k] = acc;
    }
    return out;
}

Christoffel christoffel(const Shape& shape, const Point& p) {
    shape.validate();
    check_dim(shape, p.coords());
    auto values = detail::christoffel_values<double>(shape, y_block(shape, p));
    for (double v : values)
        if (!std::isfinite(v)) fail(ErrorKind::Internal, "singular metric in Christoffel computation");
    return Christoffel(shape.dim(), std::move(values));
}

Tangent nabla_phi(const Shape& shape, const Point& p, const Tangent& u, const Tangent& v) {
    // (nabla_u phi) v = D_u(phi V) + Gamma(u, phi v) - phi(Gamma(u, v)), V constant.
    const Christoffel gamma = christoffel(shape, p);
    Tangent d_phi = Tangent::Zero(shape.dim());
    double zc = 0.0;
    for (int i = 0; i < shape.m; ++i) zc += v[shape.y_index(i)] * u[shape.y_index(i)];
    d_phi.tail(shape.s).setConstant(zc);
    return d_phi + gamma.contract(u, phi(shape, p, v)) - phi(shape, p, gamma.contract(u, v));
}

bool AxiomReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

AxiomReport verify_axioms(const Shape& shape, int sample_count, double tensor_tol,
                          double connection_tol, std::uint64_t seed) {
    shape.validate();
    if (sample_count < 1) fail(ErrorKind::Usage, "sample_count must be >= 1");
    if (!(tensor_tol > 0.0) || !(connection_tol > 0.0))
        fail(ErrorKind::Usage, "tolerances must be positive");

    const int n = shape.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    auto draw = [&] {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = coord(rng);
        return v;
    };

    enum Id {
        kPhiSquared, kEtaXi, kPhiXi, kEtaPhi, kMetricCompat, kEtaMetric, kXiOrthonormal,
        kXiSumNorm, kPositiveDefinite, kChristoffelSymmetry, kNablaPhi, kNablaXi, kCount
    };
    const char* names[kCount] = {
        "phi_squared",        "eta_xi_delta",       "phi_xi_zero",     "eta_phi_zero",
        "metric_compatibility", "eta_equals_g_xi", "xi_orthonormal",  "xi_sum_norm",
        "metric_positive_definite", "christoffel_symmetry", "nabla_phi", "nabla_xi"};
    std::vector<double> worst(kCount, 0.0);
    auto note = [&](Id id, double r) { worst[id] = std::max(worst[id], std::abs(r)); };

    const Tangent xs = xi_sum(shape);
    for (int sample = 0; sample < sample_count; ++sample) {
        const Point p(draw());
        const Tangent u = draw();
        const Tangent v = draw();

        Tangent proj = Tangent::Zero(n);
        for (int a = 0; a < shape.s; ++a) proj += eta(shape, a, p, v) * xi(shape, a);
        note(kPhiSquared, norm(shape, p, phi(shape, p, phi(shape, p, v)) + v - proj));

        for (int a = 0; a < shape.s; ++a) {
            const Tangent xa = xi(shape, a);
            for (int b = 0; b < shape.s; ++b) {
                note(kEtaXi, eta(shape, a, p, xi(shape, b)) - (a == b ? 1.0 : 0.0));
                note(kXiOrthonormal, metric(shape, p, xa, xi(shape, b)) - (a == b ? 1.0 : 0.0));
            }
            note(kPhiXi, norm(shape, p, phi(shape, p, xa)));
            note(kEtaPhi, eta(shape, a, p, phi(shape, p, v)));
            note(kEtaMetric, eta(shape, a, p, v) - metric(shape, p, v, xa));
        }

        double eta_uv = 0.0;
        for (int a = 0; a < shape.s; ++a) eta_uv += eta(shape, a, p, u) * eta(shape, a, p, v);
        note(kMetricCompat, metric(shape, p, phi(shape, p, u), phi(shape, p, v)) -
                                metric(shape, p, u, v) + eta_uv);
        note(kXiSumNorm, metric(shape, p, xs, xs) - shape.s);

        const Eigen::MatrixXd g = metric_matrix(shape, p);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() <= 0.0) note(kPositiveDefinite, 1.0);

        const Christoffel gamma = christoffel(shape, p);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) note(kChristoffelSymmetry, gamma(k, i, j) - gamma(k, j, i));

        // (nabla_u phi) v = sum_a { g(phi u, phi v) xi_a + eta^a(v) phi^2 u }
        const Tangent phi_u = phi(shape, p, u);
        const Tangent phi2_u = phi(shape, p, phi_u);
        Tangent rhs = Tangent::Zero(n);
        const double gpp = metric(shape, p, phi_u, phi(shape, p, v));
        for (int a = 0; a < shape.s; ++a) rhs += gpp * xi(shape, a) + eta(shape, a, p, v) * phi2_u;
        note(kNablaPhi, norm(shape, p, nabla_phi(shape, p, u, v) - rhs));

        // nabla_u xi_a = Gamma(u, xi_a) for constant xi_a; must equal -phi u.
        for (int a = 0; a < shape.s; ++a)
            note(kNablaXi, norm(shape, p, gamma.contract(u, xi(shape, a)) + phi_u));
    }

    AxiomReport report;
    report.shape = shape;
    report.samples = sample_count;
    report.seed = seed;
    for (int id = 0; id < kCount; ++id) {
        const bool connection = id == kNablaPhi || id == kNablaXi || id == kChristoffelSymmetry;
        AxiomCheck c;
        c.name = names[id];
        c.max_residual = worst[id];
        c.tolerance = connection ? connection_tol : tensor_tol;
        c.passed = std::isfinite(c.max_residual) && c.max_residual < c.tolerance;
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace slant
