// spectral.hpp — Ohmic-family spectral densities and thermal spectral distributions
//
// J(w) = g^2 wc^{1-s} w^s e^{-w/wc},  I(w) = J(w)[N(w)+1/2],
// high-T limit I(w) = J(w) kT/w. Internal units: hbar = 1, w0 = 1.

#pragma once

#include <cmath>
#include <string>

#include "qbm/errors.hpp"

namespace qbm {

enum class ReservoirKind { Ohmic, SubOhmic, SuperOhmic, Custom };

inline double ohmicity_exponent(ReservoirKind kind, double custom_s = 0.0) {
    switch (kind) {
        case ReservoirKind::Ohmic: return 1.0;
        case ReservoirKind::SubOhmic: return 0.5;
        case ReservoirKind::SuperOhmic: return 3.0;
        case ReservoirKind::Custom: return custom_s;
    }
    return custom_s;
}

inline const char* reservoir_name(ReservoirKind kind) {
    switch (kind) {
        case ReservoirKind::Ohmic: return "ohmic";
        case ReservoirKind::SubOhmic: return "subohmic";
        case ReservoirKind::SuperOhmic: return "superohmic";
        case ReservoirKind::Custom: return "custom";
    }
    return "custom";
}

struct SpectralModel {
    double s = 1.0;        // Ohmicity exponent
    double g = 0.1;        // dimensionless coupling
    double omega_c = 1.0;  // cutoff frequency (units of w0)
    double omega_0 = 1.0;  // system frequency, 1 in internal units

    SpectralModel() = default;
    SpectralModel(double s, double g, double omega_c, double omega_0 = 1.0)
        : s(s), g(g), omega_c(omega_c), omega_0(omega_0) {
        validate();
    }
    SpectralModel(ReservoirKind kind, double g, double omega_c)
        : SpectralModel(ohmicity_exponent(kind), g, omega_c) {}

    static SpectralModel from_resonance(ReservoirKind kind, double g, double r,
                                        double omega_0 = 1.0) {
        return SpectralModel(ohmicity_exponent(kind), g, r * omega_0, omega_0);
    }

    // r = wc/w0, derived, never stored
    double resonance() const { return omega_c / omega_0; }

    void validate() const {
        if (!(s > 0.0)) throw DomainError("SpectralModel: s must be > 0");
        if (!(g >= 0.0)) throw DomainError("SpectralModel: g must be >= 0");
        if (!(omega_c > 0.0)) throw DomainError("SpectralModel: omega_c must be > 0");
        if (!(omega_0 > 0.0)) throw DomainError("SpectralModel: omega_0 must be > 0");
    }
};

enum class TemperatureMode { Exact, HighT };

struct ThermalBath {
    double kT = 100.0;  // in units of hbar*w0
    TemperatureMode mode = TemperatureMode::HighT;

    ThermalBath() = default;
    ThermalBath(double kT, TemperatureMode mode = TemperatureMode::HighT)
        : kT(kT), mode(mode) {
        validate();
    }

    void validate() const {
        if (!(kT > 0.0)) throw DomainError("ThermalBath: kT must be > 0");
    }

    // N(w) = (e^{w/kT}-1)^{-1}
    double occupation(double omega) const {
        return 1.0 / std::expm1(omega / kT);
    }
};

inline double eval_j(const SpectralModel& m, double omega) {
    if (omega < 0.0) throw DomainError("eval_j: omega must be >= 0");
    if (omega == 0.0) return 0.0;  // w^s -> 0 for s > 0
    return m.g * m.g * std::pow(m.omega_c, 1.0 - m.s) * std::pow(omega, m.s) *
           std::exp(-omega / m.omega_c);
}

// Thermally weighted spectral distribution. At w=0 returns the analytic limit
// when finite (0 for s>1, g^2 kT for s=1) and throws IntegrableSingularity for
// s<1 where I ~ w^{s-1}.
inline double eval_i(const SpectralModel& m, const ThermalBath& bath, double omega) {
    if (omega < 0.0) throw DomainError("eval_i: omega must be >= 0");
    if (omega == 0.0) {
        if (m.s > 1.0) return 0.0;
        if (m.s == 1.0) return m.g * m.g * bath.kT;
        throw IntegrableSingularity("eval_i: I(w) ~ w^{s-1} diverges at w=0 for s<1");
    }
    if (bath.mode == TemperatureMode::HighT)
        return eval_j(m, omega) * bath.kT / omega;
    return eval_j(m, omega) * (bath.occupation(omega) + 0.5);
}

// Markovian limits Delta_M = pi I(w0), gamma_M = (pi/2) J(w0)
inline double markovian_delta(const SpectralModel& m, const ThermalBath& bath) {
    return M_PI * eval_i(m, bath, m.omega_0);
}

inline double markovian_gamma(const SpectralModel& m) {
    return 0.5 * M_PI * eval_j(m, m.omega_0);
}

}  // namespace qbm
