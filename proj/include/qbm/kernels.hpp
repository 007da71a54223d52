// kernels.hpp — time-dependent master-equation coefficients
//
// Delta(t) = 2 int_0^inf dw I(w) K_c(w,t),   K_c = int_0^t cos(wt')cos(w0 t')dt'
// gamma(t) =   int_0^inf dw J(w) K_s(w,t),   K_s = int_0^t sin(wt')sin(w0 t')dt'
// N(t) = int_0^t Delta,  Gamma(t) = 2 int_0^t gamma.
// The inner time integrals are evaluated in closed form, leaving one
// oscillatory w-integral per coefficient (and per cumulative integral).

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qbm/quadrature.hpp"
#include "qbm/spectral.hpp"

namespace qbm::kernels {

namespace detail {

// sin(x t)/(2x) with the removable singularity at x=0 replaced by its series
// when |x| < 1e-6 (4th-order in z = x t).
inline double half_sinc(double x, double t, double branch_eps) {
    if (std::abs(x) < branch_eps) {
        const double z = x * t, z2 = z * z;
        return 0.5 * t * (1.0 - z2 / 6.0 * (1.0 - z2 / 20.0));
    }
    return std::sin(x * t) / (2.0 * x);
}

// (1 - cos(x t))/(2x^2), same branch
inline double half_versine(double x, double t, double branch_eps) {
    if (std::abs(x) < branch_eps) {
        const double z = x * t, z2 = z * z;
        return 0.25 * t * t * (1.0 - z2 / 12.0 * (1.0 - z2 / 30.0));
    }
    return (1.0 - std::cos(x * t)) / (2.0 * x * x);
}

}  // namespace detail

// closed-form inner time integrals
inline double cos_kernel(double omega, double omega_0, double t) {
    const double eps = 1e-6 * omega_0;
    return detail::half_sinc(omega - omega_0, t, eps) +
           detail::half_sinc(omega + omega_0, t, eps);
}

inline double sin_kernel(double omega, double omega_0, double t) {
    const double eps = 1e-6 * omega_0;
    return detail::half_sinc(omega - omega_0, t, eps) -
           detail::half_sinc(omega + omega_0, t, eps);
}

// int_0^t cos_kernel dt' and int_0^t sin_kernel dt'
inline double cos_kernel_cum(double omega, double omega_0, double t) {
    const double eps = 1e-6 * omega_0;
    return detail::half_versine(omega - omega_0, t, eps) +
           detail::half_versine(omega + omega_0, t, eps);
}

inline double sin_kernel_cum(double omega, double omega_0, double t) {
    const double eps = 1e-6 * omega_0;
    return detail::half_versine(omega - omega_0, t, eps) -
           detail::half_versine(omega + omega_0, t, eps);
}

namespace detail {

// One oscillatory w-integral over [0, factor*wc]. For s<1 the origin is an
// integrable w^{s-1} singularity: substitute w = u^2 on [0, split] so the
// integrand is regular, and keep the panel bound equivalent in u.
template <class F>
inline double integrate_spectrum(F&& f, const SpectralModel& m, double t,
                                 const QuadratureConfig& cfg, bool singular_origin) {
    const double wmax = cfg.omega_max_factor * m.omega_c;
    const double panel = t > 0.0 ? M_PI / (4.0 * t) : 0.0;
    if (!singular_origin)
        return quad::integrate(f, 0.0, wmax, cfg, panel);
    const double split = std::min(0.5 * m.omega_0, m.omega_c);
    const double us = std::sqrt(split);
    auto fu = [&f](double u) { return f(u * u) * 2.0 * u; };
    const double panel_u = t > 0.0 ? M_PI / (8.0 * t * us) : 0.0;
    return quad::integrate(fu, 0.0, us, cfg, panel_u) +
           quad::integrate(f, split, wmax, cfg, panel);
}

}  // namespace detail

// Diffusion coefficient Delta(t)
inline double compute_delta(const SpectralModel& m, const ThermalBath& bath, double t,
                            const QuadratureConfig& cfg = {}) {
    if (t < 0.0) throw DomainError("compute_delta: t must be >= 0");
    cfg.validate();
    if (t == 0.0 || m.g == 0.0) return 0.0;
    auto f = [&](double w) { return 2.0 * eval_i(m, bath, w) * cos_kernel(w, m.omega_0, t); };
    return detail::integrate_spectrum(f, m, t, cfg, m.s < 1.0);
}

// Dissipation coefficient gamma(t); temperature-independent (weights J, not I)
inline double compute_gamma(const SpectralModel& m, double t,
                            const QuadratureConfig& cfg = {}) {
    if (t < 0.0) throw DomainError("compute_gamma: t must be >= 0");
    cfg.validate();
    if (t == 0.0 || m.g == 0.0) return 0.0;
    auto f = [&](double w) { return eval_j(m, w) * sin_kernel(w, m.omega_0, t); };
    // J ~ w^s is continuous at 0; the substitution still smooths the s<1 kink
    return detail::integrate_spectrum(f, m, t, cfg, m.s < 1.0);
}

// Heating function N(t) = int_0^t Delta, via the closed-form cumulative kernel
inline double compute_heating(const SpectralModel& m, const ThermalBath& bath, double t,
                              const QuadratureConfig& cfg = {}) {
    if (t < 0.0) throw DomainError("compute_heating: t must be >= 0");
    cfg.validate();
    if (t == 0.0 || m.g == 0.0) return 0.0;
    auto f = [&](double w) { return 2.0 * eval_i(m, bath, w) * cos_kernel_cum(w, m.omega_0, t); };
    return detail::integrate_spectrum(f, m, t, cfg, m.s < 1.0);
}

// Damping exponent Gamma(t) = 2 int_0^t gamma
inline double compute_big_gamma(const SpectralModel& m, double t,
                                const QuadratureConfig& cfg = {}) {
    if (t < 0.0) throw DomainError("compute_big_gamma: t must be >= 0");
    cfg.validate();
    if (t == 0.0 || m.g == 0.0) return 0.0;
    auto f = [&](double w) { return 2.0 * eval_j(m, w) * sin_kernel_cum(w, m.omega_0, t); };
    return detail::integrate_spectrum(f, m, t, cfg, m.s < 1.0);
}

// N(t) by composite adaptive Simpson over t' reusing compute_delta; the
// independent route against compute_heating (used by trace and tests).
inline double compute_heating_time_route(const SpectralModel& m, const ThermalBath& bath,
                                         double t, const QuadratureConfig& cfg = {}) {
    if (t < 0.0) throw DomainError("compute_heating_time_route: t must be >= 0");
    if (t == 0.0 || m.g == 0.0) return 0.0;
    auto f = [&](double tp) { return compute_delta(m, bath, tp, cfg); };
    return quad::adaptive_simpson(f, 0.0, t, cfg.rel_tol, cfg.abs_tol);
}

enum class CoefficientMode { NonMarkovian, Markovian };

struct CoefficientTrace {
    std::vector<double> times;      // monotone, starts at 0 (units 1/w0)
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<double> heating;    // N(t)
    std::vector<double> big_gamma;  // Gamma(t)
    CoefficientMode mode = CoefficientMode::NonMarkovian;
    SpectralModel model;
    ThermalBath bath;
    double delta_markov = 0.0;
    double gamma_markov = 0.0;
};

// Full trace on a time grid. Cumulative columns are accumulated interval by
// interval (adaptive Simpson between consecutive grid points), not
// re-integrated from 0 per sample.
inline CoefficientTrace trace(const SpectralModel& m, const ThermalBath& bath,
                              const std::vector<double>& time_grid, CoefficientMode mode,
                              const QuadratureConfig& cfg = {}) {
    if (time_grid.empty()) throw DomainError("trace: empty time grid");
    if (time_grid.front() != 0.0) throw DomainError("trace: grid must start at 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i)
        if (!(time_grid[i] > time_grid[i - 1]))
            throw DomainError("trace: grid must be strictly increasing");
    cfg.validate();

    CoefficientTrace tr;
    tr.times = time_grid;
    tr.mode = mode;
    tr.model = m;
    tr.bath = bath;
    tr.delta_markov = markovian_delta(m, bath);
    tr.gamma_markov = markovian_gamma(m);
    const std::size_t n = time_grid.size();
    tr.delta.resize(n);
    tr.gamma.resize(n);
    tr.heating.resize(n);
    tr.big_gamma.resize(n);

    if (mode == CoefficientMode::Markovian) {
        for (std::size_t i = 0; i < n; ++i) {
            tr.delta[i] = tr.delta_markov;
            tr.gamma[i] = tr.gamma_markov;
            tr.heating[i] = tr.delta_markov * time_grid[i];
            tr.big_gamma[i] = 2.0 * tr.gamma_markov * time_grid[i];
        }
        return tr;
    }

    for (std::size_t i = 0; i < n; ++i) {
        tr.delta[i] = compute_delta(m, bath, time_grid[i], cfg);
        tr.gamma[i] = compute_gamma(m, time_grid[i], cfg);
    }
    tr.heating[0] = 0.0;
    tr.big_gamma[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        auto fd = [&](double tp) { return compute_delta(m, bath, tp, cfg); };
        auto fg = [&](double tp) { return compute_gamma(m, tp, cfg); };
        const double a = time_grid[i - 1], b = time_grid[i];
        tr.heating[i] = tr.heating[i - 1] +
                        quad::adaptive_simpson(fd, a, b, cfg.rel_tol, cfg.abs_tol);
        tr.big_gamma[i] = tr.big_gamma[i - 1] +
                          2.0 * quad::adaptive_simpson(fg, a, b, cfg.rel_tol, cfg.abs_tol);
    }
    return tr;
}

}  // namespace qbm::kernels
