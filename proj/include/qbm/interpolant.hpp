// interpolant.hpp — natural cubic spline on a uniform grid (coefficient memoization)

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {

class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(double t0, double dt, std::vector<double> values)
        : t0_(t0), dt_(dt), y_(std::move(values)) {
        if (y_.size() < 2 || !(dt_ > 0.0))
            throw DomainError("CubicSpline: need >= 2 uniform samples");
        build();
    }

    double operator()(double t) const {
        const std::size_t n = y_.size();
        double x = (t - t0_) / dt_;
        if (x <= 0.0) x = 0.0;
        if (x >= static_cast<double>(n - 1)) x = static_cast<double>(n - 1) - 1e-12;
        const std::size_t i = static_cast<std::size_t>(x);
        const double a = x - static_cast<double>(i);
        const double b = 1.0 - a;
        const double h2 = dt_ * dt_ / 6.0;
        return b * y_[i] + a * y_[i + 1] +
               h2 * ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[i + 1]);
    }

    double t_min() const { return t0_; }
    double t_max() const { return t0_ + dt_ * static_cast<double>(y_.size() - 1); }

  private:
    void build() {
        // natural boundary: second derivatives m_0 = m_{n-1} = 0 (Thomas solve)
        const std::size_t n = y_.size();
        m_.assign(n, 0.0);
        if (n == 2) return;
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (dt_ * dt_);
            const double denom = 4.0 - c[i - 1];
            c[i] = 1.0 / denom;
            d[i] = (rhs - d[i - 1]) / denom;
        }
        for (std::size_t i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
    }

    double t0_ = 0.0, dt_ = 1.0;
    std::vector<double> y_, m_;
};

}  // namespace qbm
