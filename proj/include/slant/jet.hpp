#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <span>

namespace slant {

/// Truncated Taylor series in the curve parameter: c[k] = f^(k)(t0) / k!.
///
/// Arithmetic follows the usual jet rules and the result order is the
/// minimum order of the operands. Constants carry the maximal order so they
/// never truncate anything.
class Taylor {
public:
    static constexpr int kMaxOrder = 7;

    Taylor() : Taylor(0.0) {}
    Taylor(double constant) : order_(kMaxOrder) {  // NOLINT: implicit on purpose
        c_.fill(0.0);
        c_[0] = constant;
    }

    static Taylor zero(int order) {
        Taylor r;
        r.order_ = order;
        return r;
    }

    /// Build from ordinary derivatives f, f', f'', ...
    static Taylor from_derivatives(std::span<const double> d) {
        assert(!d.empty() && static_cast<int>(d.size()) <= kMaxOrder + 1);
        Taylor r = zero(static_cast<int>(d.size()) - 1);
        double fact = 1.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            r.c_[k] = d[k] / fact;
        }
        return r;
    }

    int order() const { return order_; }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.begin() + order_ + 1, [](double v) { return v == 0.0; });
    }
    double value() const { return c_[0]; }
    double coeff(int k) const { return c_[k]; }
    double& coeff(int k) { return c_[k]; }

    /// k-th ordinary derivative at the expansion point.
    double derivative_value(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c_[k] * fact;
    }

    /// d/dt of the series; loses one order.
    Taylor derivative() const {
        assert(order_ >= 1);
        Taylor r = zero(order_ - 1);
        for (int k = 0; k < order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
        return r;
    }

    Taylor truncated(int order) const {
        Taylor r = *this;
        r.order_ = std::min(order_, order);
        for (int k = r.order_ + 1; k <= kMaxOrder; ++k) r.c_[k] = 0.0;
        return r;
    }

    Taylor operator-() const {
        Taylor r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Taylor& operator+=(const Taylor& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        clear_tail();
        return *this;
    }
    Taylor& operator-=(const Taylor& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        clear_tail();
        return *this;
    }
    Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
    Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

    friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r = zero(std::min(a.order_, b.order_));
        for (int k = 0; k <= r.order_; ++k) {
            double acc = 0.0;
            for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
            r.c_[k] = acc;
        }
        return r;
    }

    friend Taylor operator/(const Taylor& a, const Taylor& b) {
        Taylor q = zero(std::min(a.order_, b.order_));
        for (int k = 0; k <= q.order_; ++k) {
            double acc = a.c_[k];
            for (int i = 1; i <= k; ++i) acc -= b.c_[i] * q.c_[k - i];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

private:
    void clear_tail() {
        for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
    }

    std::array<double, kMaxOrder + 1> c_{};
    int order_ = kMaxOrder;
};

inline double value_of(double x) { return x; }
inline double value_of(const Taylor& x) { return x.value(); }

}  // namespace slant
