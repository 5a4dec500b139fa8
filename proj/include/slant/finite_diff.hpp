#pragma once

#include <span>
#include <vector>

namespace slant {

/// Finite-difference weights for derivatives 0..max_order at x0 from the
/// given nodes (Fornberg's recursion). Result[k][i] multiplies f(nodes[i])
/// for the k-th derivative.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order);

/// 5-point central first and second derivatives of uniformly spaced samples
/// at index j (requires 2 <= j < size - 2).
double central5_first(std::span<const double> f, std::size_t j, double h);
double central5_second(std::span<const double> f, std::size_t j, double h);

}  // namespace slant
