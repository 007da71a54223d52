// quadrature.hpp — adaptive Gauss–Kronrod integration with oscillation-bounded
// panel seeding, plus adaptive Simpson for cumulative time integrals.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double omega_max_factor = 60.0;  // integrate w in [0, factor*wc]
    int max_subdivisions = 2000;     // adaptive refinement splits beyond the seeded panels

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw DomainError("QuadratureConfig: tolerances must be > 0");
        if (!(omega_max_factor >= 30.0))
            throw DomainError("QuadratureConfig: omega_max_factor must be >= 30");
        if (max_subdivisions <= 0)
            throw DomainError("QuadratureConfig: max_subdivisions must be positive");
    }
};

namespace quad {

// 7/15 Gauss–Kronrod pair (QUADPACK nodes, positive half)
inline constexpr double kronrod_x[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kronrod_w[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472783};
inline constexpr double gauss_w[4] = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894,
    0.41795918367346939};

struct Panel {
    double a, b, value, error;
};

template <class F>
inline Panel gauss_kronrod_15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kronrod_x[i]);
        fv[14 - i] = f(c + h * kronrod_x[i]);
    }
    fv[7] = f(c);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 7; ++i) {
        k += kronrod_w[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) g += gauss_w[i / 2] * (fv[i] + fv[14 - i]);
    }
    k += kronrod_w[7] * fv[7];
    g += gauss_w[3] * fv[7];
    return {a, b, k * h, std::abs((k - g) * h)};
}

// Integrate f over [a,b]. The interval is pre-split into panels no wider than
// max_panel_width (the oscillation bound), then the worst panels are bisected
// until the summed error estimate meets the tolerance. Deterministic: the
// refinement order is fixed by (error, position).
template <class F>
inline double integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
                        double max_panel_width = 0.0) {
    if (!(b > a)) return 0.0;
    const double width = b - a;
    std::size_t n0 = 1;
    if (max_panel_width > 0.0 && max_panel_width < width)
        n0 = static_cast<std::size_t>(std::ceil(width / max_panel_width));

    auto cmp = [](const Panel& x, const Panel& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

    long double total = 0.0L, err = 0.0L;
    for (std::size_t i = 0; i < n0; ++i) {
        const double pa = a + width * static_cast<double>(i) / static_cast<double>(n0);
        const double pb = (i + 1 == n0) ? b : a + width * static_cast<double>(i + 1) / static_cast<double>(n0);
        Panel p = gauss_kronrod_15(f, pa, pb);
        total += p.value;
        err += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (err > std::max<long double>(cfg.abs_tol, cfg.rel_tol * std::abs((double)total))) {
        if (splits >= cfg.max_subdivisions)
            throw ConvergenceError("quadrature did not converge within max_subdivisions",
                                   static_cast<double>(total), static_cast<double>(err));
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            if (heap.empty()) break;
            continue;
        }
        Panel left = gauss_kronrod_15(f, worst.a, mid);
        Panel right = gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    return static_cast<double>(total);
}

// Recursive adaptive Simpson for smooth 1-D time integrals.
template <class F>
inline double simpson_recurse(F&& f, double a, double b, double fa, double fm, double fb,
                              double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0)
        throw ConvergenceError("adaptive Simpson: max depth reached", left + right,
                               std::abs(delta));
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
inline double adaptive_simpson(F&& f, double a, double b, double rel_tol, double abs_tol,
                               int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace quad
}  // namespace qbm
