// zeno.hpp — quantum-Zeno / anti-Zeno crossover under repeated nonselective
// energy measurements
//
// gamma^Z(tau) = N(tau)/tau,  gamma^0 = Delta_M,  ratio < 1: QZE, > 1: AZE.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "qbm/kernels.hpp"

namespace qbm::zeno {

enum class Classification { QZE, AZE, Boundary, Missing };

inline constexpr double default_boundary_tol = 1e-3;
inline constexpr double default_root_tol = 1e-4;

inline Classification classify(double ratio, double boundary_tol = default_boundary_tol) {
    if (std::abs(ratio - 1.0) <= boundary_tol) return Classification::Boundary;
    return ratio < 1.0 ? Classification::QZE : Classification::AZE;
}

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::QZE: return "QZE";
        case Classification::AZE: return "AZE";
        case Classification::Boundary: return "BOUNDARY";
        case Classification::Missing: return "MISSING";
    }
    return "MISSING";
}

struct ZenoPoint {
    double r = 1.0;
    double tau = 0.0;          // units 1/w0
    double omega_c_tau = 0.0;  // same interval in cutoff units
    double ratio = 0.0;        // gamma^Z(tau)/gamma^0
    Classification classification = Classification::QZE;
};

// (1/tau) int_0^tau Delta = N(tau)/tau
inline double effective_decay_rate(const SpectralModel& m, const ThermalBath& bath,
                                   double tau, const QuadratureConfig& cfg = {},
                                   kernels::CoefficientMode mode =
                                       kernels::CoefficientMode::NonMarkovian) {
    if (!(tau > 0.0)) throw DomainError("effective_decay_rate: tau must be > 0");
    if (mode == kernels::CoefficientMode::Markovian) return markovian_delta(m, bath);
    return kernels::compute_heating(m, bath, tau, cfg) / tau;
}

inline double zeno_ratio(const SpectralModel& m, const ThermalBath& bath, double tau,
                         const QuadratureConfig& cfg = {},
                         kernels::CoefficientMode mode =
                             kernels::CoefficientMode::NonMarkovian) {
    const double dM = markovian_delta(m, bath);
    if (dM == 0.0) throw DegenerateModelError("zeno_ratio: Delta_M = 0");
    return effective_decay_rate(m, bath, tau, cfg, mode) / dM;
}

// Scan ratio-1 on a log-spaced grid over tau_range = [tau_min, tau_max]
// (units 1/w0) and refine every sign change by bisection until
// |ratio(tau*) - 1| < root_tol. Empty result: no crossover in range.
inline std::vector<double> crossover_times(const SpectralModel& m, const ThermalBath& bath,
                                           double tau_min, double tau_max,
                                           const QuadratureConfig& cfg = {},
                                           int scan_points = 400,
                                           double root_tol = default_root_tol,
                                           kernels::CoefficientMode mode =
                                               kernels::CoefficientMode::NonMarkovian) {
    if (!(tau_min > 0.0) || !(tau_max > tau_min))
        throw DomainError("crossover_times: need 0 < tau_min < tau_max");
    if (scan_points < 2) throw DomainError("crossover_times: scan_points < 2");

    auto f = [&](double tau) { return zeno_ratio(m, bath, tau, cfg, mode) - 1.0; };
    const double lmin = std::log(tau_min), lmax = std::log(tau_max);
    std::vector<double> roots;
    double prev_tau = tau_min;
    double prev_f = f(prev_tau);
    for (int i = 1; i < scan_points; ++i) {
        const double tau = std::exp(lmin + (lmax - lmin) * i / (scan_points - 1.0));
        const double fi = f(tau);
        if (prev_f != 0.0 && fi != 0.0 && (prev_f < 0.0) != (fi < 0.0)) {
            double lo = prev_tau, hi = tau, flo = prev_f;
            double mid = 0.5 * (lo + hi), fm = 0.0;
            bool converged = false;
            for (int it = 0; it < 200; ++it) {
                mid = 0.5 * (lo + hi);
                fm = f(mid);
                if (std::abs(fm) < root_tol) {
                    converged = true;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if (hi - lo <= 1e-15 * hi) break;
            }
            if (!converged)
                throw RootRefinementError("crossover_times: bisection did not reach root_tol");
            roots.push_back(mid);
        }
        prev_tau = tau;
        prev_f = fi;
    }
    return roots;
}

struct ZenoMap {
    std::vector<double> r_grid;
    std::vector<double> tau_grid;             // in wc*tau units
    std::vector<std::vector<ZenoPoint>> cells;  // [ir][itau]
    std::vector<std::vector<double>> roots;     // per r-column, tau* in wc*tau units
    ReservoirKind kind = ReservoirKind::Ohmic;
    double s = 1.0;
    double g = 0.1;
    ThermalBath bath;
    double boundary_tol = default_boundary_tol;
    std::size_t failed_cells = 0;
};

namespace detail {
inline void parallel_over(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned k = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += k) body(i);
        });
    for (auto& th : pool) th.join();
}
}  // namespace detail

// Column scan range for tau*: extends far below the display grid so the
// small-r sub-ohmic crossover (wc*tau ~ 1e-5 at r=0.1) is still found.
inline constexpr double root_scan_wct_min = 1e-6;

inline ZenoMap crossover_map(ReservoirKind kind, double g, const ThermalBath& bath,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& tau_grid_wct,
                             const QuadratureConfig& cfg = {}, unsigned threads = 1,
                             double boundary_tol = default_boundary_tol,
                             double root_tol = default_root_tol, double custom_s = 0.0,
                             kernels::CoefficientMode mode =
                                 kernels::CoefficientMode::NonMarkovian) {
    if (r_grid.empty() || tau_grid_wct.empty())
        throw DomainError("crossover_map: empty grid");
    for (double r : r_grid)
        if (!(r > 0.0)) throw DomainError("crossover_map: r must be > 0");
    for (double w : tau_grid_wct)
        if (!(w > 0.0)) throw DomainError("crossover_map: wc*tau must be > 0");

    ZenoMap map;
    map.r_grid = r_grid;
    map.tau_grid = tau_grid_wct;
    map.kind = kind;
    map.s = ohmicity_exponent(kind, custom_s);
    map.g = g;
    map.bath = bath;
    map.boundary_tol = boundary_tol;
    map.cells.assign(r_grid.size(), {});
    map.roots.assign(r_grid.size(), {});

    std::vector<std::size_t> failures(r_grid.size(), 0);
    detail::parallel_over(r_grid.size(), threads, [&](std::size_t ir) {
        const double r = r_grid[ir];
        SpectralModel m(map.s, g, r * 1.0);
        auto& col = map.cells[ir];
        col.resize(tau_grid_wct.size());
        for (std::size_t it = 0; it < tau_grid_wct.size(); ++it) {
            ZenoPoint p;
            p.r = r;
            p.omega_c_tau = tau_grid_wct[it];
            p.tau = tau_grid_wct[it] / m.omega_c;
            try {
                p.ratio = zeno_ratio(m, bath, p.tau, cfg, mode);
                p.classification = classify(p.ratio, boundary_tol);
            } catch (const std::exception&) {
                p.ratio = std::nan("");
                p.classification = Classification::Missing;
                ++failures[ir];
            }
            col[it] = p;
        }
        if (mode == kernels::CoefficientMode::NonMarkovian) {
            const double wct_lo = std::min(root_scan_wct_min, tau_grid_wct.front());
            const double wct_hi = tau_grid_wct.back();
            try {
                auto roots_t = crossover_times(m, bath, wct_lo / m.omega_c,
                                               wct_hi / m.omega_c, cfg, 400, root_tol, mode);
                for (double t : roots_t) map.roots[ir].push_back(t * m.omega_c);
            } catch (const std::exception&) {
                ++failures[ir];
            }
        }
    });
    for (std::size_t c : failures) map.failed_cells += c;
    return map;
}

}  // namespace qbm::zeno
