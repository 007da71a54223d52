// decoherence.hpp — Schrödinger-cat fringe-visibility decay
//
// Off-resonant (r<<1):  F = exp[-2 a^2 (1 - e^{-Gamma}/(2N+1))]
// Resonant     (r>>1):  F = exp[-2 a^2 (1 - e^{-Gamma}/(4N+1))]
// with N(t), Gamma(t) from kernels. Unitless time column Gamma'ized: 2 g^2 w0 t.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qbm/kernels.hpp"

namespace qbm::decoherence {

struct CatState {
    double alpha = 1.0;  // real coherent amplitude

    CatState() = default;
    explicit CatState(double alpha) : alpha(alpha) {
        if (!(alpha > 0.0)) throw DomainError("CatState: alpha must be > 0");
    }

    // N = 2(1 + e^{-2 a^2}); cancels in the fringe-visibility ratio
    double normalization() const { return 2.0 * (1.0 + std::exp(-2.0 * alpha * alpha)); }
};

// Regime is explicit caller input, never inferred from r.
enum class Regime { OffResonant, Resonant };

inline double fringe_visibility(const CatState& cat, double heating, double damping,
                                Regime regime) {
    const double den =
        (regime == Regime::OffResonant ? 2.0 : 4.0) * heating + 1.0;
    if (den <= 0.0)
        throw RegimeValidityError(
            "fringe_visibility: denominator " +
            std::string(regime == Regime::OffResonant ? "2N+1" : "4N+1") +
            " is non-positive (N=" + std::to_string(heating) + ")");
    const double a2 = cat.alpha * cat.alpha;
    return std::exp(-2.0 * a2 * (1.0 - std::exp(-damping) / den));
}

struct FringeTrace {
    std::vector<double> times;          // t (units 1/w0)
    std::vector<double> gamma_prime_t;  // 2 g^2 w0 t
    std::vector<double> visibility;
    Regime regime = Regime::OffResonant;
    kernels::CoefficientMode mode = kernels::CoefficientMode::NonMarkovian;
    SpectralModel model;
    ThermalBath bath;
    CatState cat;
    bool regime_warning = false;  // formula used outside its derivation regime
    std::string warning;
};

// Asymptotic-validity thresholds: the off-resonant formula was derived for
// r<<1, the resonant one for r>>1.
inline constexpr double off_resonant_warn_r = 0.5;
inline constexpr double resonant_warn_r = 2.0;

inline FringeTrace fringe_trace(const CatState& cat, const SpectralModel& m,
                                const ThermalBath& bath,
                                const std::vector<double>& time_grid, Regime regime,
                                kernels::CoefficientMode mode,
                                const QuadratureConfig& cfg = {}) {
    auto tr = kernels::trace(m, bath, time_grid, mode, cfg);
    FringeTrace out;
    out.times = time_grid;
    out.regime = regime;
    out.mode = mode;
    out.model = m;
    out.bath = bath;
    out.cat = cat;
    const double r = m.resonance();
    if (regime == Regime::OffResonant && r > off_resonant_warn_r) {
        out.regime_warning = true;
        out.warning = "off-resonant formula derived for r<<1 used at r=" + std::to_string(r);
    } else if (regime == Regime::Resonant && r < resonant_warn_r) {
        out.regime_warning = true;
        out.warning = "resonant formula derived for r>>1 used at r=" + std::to_string(r);
    }
    out.gamma_prime_t.reserve(time_grid.size());
    out.visibility.reserve(time_grid.size());
    for (std::size_t i = 0; i < time_grid.size(); ++i) {
        out.gamma_prime_t.push_back(2.0 * m.g * m.g * m.omega_0 * time_grid[i]);
        out.visibility.push_back(
            fringe_visibility(cat, tr.heating[i], tr.big_gamma[i], regime));
    }
    return out;
}

struct RankedTrace {
    FringeTrace trace;
    double area = 0.0;  // trapezoid area under F over the grid; larger = slower decoherence
    std::size_t input_index = 0;
};

// Comparative reservoir study: traces ranked by area under F (slowest first).
inline std::vector<RankedTrace> compare_reservoirs(
    const CatState& cat, const std::vector<SpectralModel>& models, const ThermalBath& bath,
    const std::vector<double>& time_grid, Regime regime, const QuadratureConfig& cfg = {},
    kernels::CoefficientMode mode = kernels::CoefficientMode::NonMarkovian) {
    if (models.empty()) throw DomainError("compare_reservoirs: no models");
    for (const auto& m : models) {
        if (m.g != models.front().g || m.omega_c != models.front().omega_c ||
            m.omega_0 != models.front().omega_0)
            throw DomainError("compare_reservoirs: models must share g and r");
    }
    std::vector<RankedTrace> out;
    out.reserve(models.size());
    for (std::size_t k = 0; k < models.size(); ++k) {
        const auto& m = models[k];
        RankedTrace rt;
        rt.input_index = k;
        rt.trace = fringe_trace(cat, m, bath, time_grid, regime, mode, cfg);
        double area = 0.0;
        for (std::size_t i = 1; i < time_grid.size(); ++i)
            area += 0.5 * (rt.trace.visibility[i] + rt.trace.visibility[i - 1]) *
                    (time_grid[i] - time_grid[i - 1]);
        rt.area = area;
        out.push_back(std::move(rt));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedTrace& a, const RankedTrace& b) { return a.area > b.area; });
    return out;
}

}  // namespace qbm::decoherence
