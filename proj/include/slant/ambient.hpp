#pragma once

// Framed metric structure of the model S-manifold R^{2m+s}(-3s).
//
// Coordinates are ordered (x_1..x_m, y_1..y_m, z_1..z_s). The structure is
//
//   eta^a = 1/2 (dz_a - sum_i y_i dx_i)
//   xi_a  = 2 d/dz_a
//   g     = sum_a eta^a (x) eta^a + 1/4 sum_i (dx_i^2 + dy_i^2)
//   phi(X d/dx + Y d/dy + Z d/dz) = Y d/dx - X d/dy + sum_a (sum_i Y_i y_i) d/dz_a
//
// Only the y-coordinates enter the metric, and they enter polynomially
// (degree <= 2), so the Levi-Civita connection is computed from exact
// partial derivatives. The same templated code runs on doubles and on
// Taylor jets, which is how covariant derivatives along curves are taken.

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slant/error.hpp"
#include "slant/jet.hpp"

namespace slant {

using Vec = Eigen::VectorXd;
using Tangent = Eigen::VectorXd;  // coordinate components at an implicit base point

/// The pair (m, s) fixing R^{2m+s}(-3s).
struct Shape {
    int m = 1;
    int s = 1;

    int dim() const { return 2 * m + s; }
    int x_index(int i) const { return i; }
    int y_index(int i) const { return m + i; }
    int z_index(int alpha) const { return 2 * m + alpha; }

    /// Throws Error(Usage) unless m >= 1 and s >= 1.
    void validate() const;

    friend bool operator==(const Shape&, const Shape&) = default;
};

/// Coordinate position in the model space.
class Point {
public:
    Point() = default;
    explicit Point(Vec coords) : coords_(std::move(coords)) {}

    static Point origin(const Shape& shape) { return Point(Vec::Zero(shape.dim())); }

    const Vec& coords() const { return coords_; }
    double x(const Shape& sh, int i) const { return coords_[sh.x_index(i)]; }
    double y(const Shape& sh, int i) const { return coords_[sh.y_index(i)]; }
    double z(const Shape& sh, int alpha) const { return coords_[sh.z_index(alpha)]; }

private:
    Vec coords_;
};

// Characteristic indices alpha are 0-based throughout the C++ API.

double eta(const Shape& shape, int alpha, const Point& p, const Tangent& v);
Tangent xi(const Shape& shape, int alpha);
/// sum_a xi_a; its squared norm is s.
Tangent xi_sum(const Shape& shape);
Tangent phi(const Shape& shape, const Point& p, const Tangent& v);

double metric(const Shape& shape, const Point& p, const Tangent& u, const Tangent& v);
Eigen::MatrixXd metric_matrix(const Shape& shape, const Point& p);
double norm(const Shape& shape, const Point& p, const Tangent& v);

/// Christoffel symbols of the second kind at a point, Gamma^k_ij.
class Christoffel {
public:
    Christoffel(int n, std::vector<double> values) : n_(n), v_(std::move(values)) {}

    int dim() const { return n_; }
    double operator()(int k, int i, int j) const { return v_[(k * n_ + i) * n_ + j]; }

    /// Gamma^k_ij u^i v^j.
    Tangent contract(const Tangent& u, const Tangent& v) const;

private:
    int n_;
    std::vector<double> v_;
};

Christoffel christoffel(const Shape& shape, const Point& p);

/// (nabla_u phi) v at p, for u, v extended as constant coordinate fields.
Tangent nabla_phi(const Shape& shape, const Point& p, const Tangent& u, const Tangent& v);

struct AxiomCheck {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = true;
};

struct AxiomReport {
    Shape shape;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomCheck> checks;

    bool passed() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20180016;

/// Random-sample verification of the framed metric axioms and the S-structure
/// connection identities. Coordinates and vector components are drawn
/// uniformly from [-2, 2]. Pure tensor identities are compared against
/// `tensor_tol`; identities involving the connection against
/// `connection_tol`.
AxiomReport verify_axioms(const Shape& shape, int sample_count, double tensor_tol,
                          double connection_tol, std::uint64_t seed = kDefaultSeed);

namespace detail {

// eta^a_i(y): component i of the 1-form eta^a. Independent of a except for the
// z block.
template <class S>
S eta_component(const Shape& sh, std::span<const S> y, int alpha, int i) {
    if (i < sh.m) return S(-0.5) * y[i];
    if (i < 2 * sh.m) return S(0.0);
    return S(i - 2 * sh.m == alpha ? 0.5 : 0.0);
}

// d eta^a_i / d y_l (constant).
inline double eta_component_dy(const Shape& sh, int i, int l) {
    return (i < sh.m && i == l) ? -0.5 : 0.0;
}

template <class S>
S metric_component(const Shape& sh, std::span<const S> y, int i, int j) {
    S g = (i == j && i < 2 * sh.m) ? S(0.25) : S(0.0);
    for (int a = 0; a < sh.s; ++a) g += eta_component(sh, y, a, i) * eta_component(sh, y, a, j);
    return g;
}

// d g_ij / d coordinate l. Only y-coordinates contribute.
template <class S>
S metric_partial(const Shape& sh, std::span<const S> y, int l, int i, int j) {
    if (l < sh.m || l >= 2 * sh.m) return S(0.0);
    const int yl = l - sh.m;
    const double di = eta_component_dy(sh, i, yl);
    const double dj = eta_component_dy(sh, j, yl);
    if (di == 0.0 && dj == 0.0) return S(0.0);
    S acc(0.0);
    for (int a = 0; a < sh.s; ++a) {
        if (di != 0.0) acc += S(di) * eta_component(sh, y, a, j);
        if (dj != 0.0) acc += eta_component(sh, y, a, i) * S(dj);
    }
    return acc;
}

// Solves G X = B in place for a symmetric positive definite G (no pivoting
// needed). B holds `rhs` column vectors, stored column-major with stride n.
template <class S>
void spd_solve_in_place(int n, std::vector<S> G, std::vector<S>& B, int rhs) {
    for (int c = 0; c < n; ++c) {
        const S pivot = G[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            const S f = G[r * n + c] / pivot;
            for (int k = c; k < n; ++k) G[r * n + k] -= f * G[c * n + k];
            for (int q = 0; q < rhs; ++q) B[q * n + r] -= f * B[q * n + c];
        }
    }
    for (int q = 0; q < rhs; ++q) {
        for (int r = n - 1; r >= 0; --r) {
            S acc = B[q * n + r];
            for (int k = r + 1; k < n; ++k) acc -= G[r * n + k] * B[q * n + k];
            B[q * n + r] = acc / G[r * n + r];
        }
    }
}

// Gamma^k_ij as a flat array indexed (k * n + i) * n + j.
template <class S>
std::vector<S> christoffel_values(const Shape& sh, std::span<const S> y) {
    const int n = sh.dim();
    std::vector<S> G(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i * n + j] = metric_component(sh, y, i, j);

    // dg[(l * n + i) * n + j] = d_l g_ij
    std::vector<S> dg(static_cast<std::size_t>(n * n * n), S(0.0));
    for (int l = sh.m; l < 2 * sh.m; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dg[(l * n + i) * n + j] = metric_partial(sh, y, l, i, j);

    // Right-hand sides: Gamma_{l,ij} for every pair (i, j); column q = i * n + j.
    std::vector<S> B(static_cast<std::size_t>(n * n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                B[(i * n + j) * n + l] = S(0.5) * (dg[(i * n + j) * n + l] + dg[(j * n + i) * n + l] -
                                                   dg[(l * n + i) * n + j]);
    spd_solve_in_place(n, std::move(G), B, n * n);

    std::vector<S> out(static_cast<std::size_t>(n * n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out[(k * n + i) * n + j] = B[(i * n + j) * n + k];
    return out;
}

}  // namespace detail
}  // namespace slant
