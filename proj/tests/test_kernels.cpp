#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbm/kernels.hpp"

using namespace qbm;
using namespace qbm::kernels;
using Catch::Approx;

namespace {
const ThermalBath kHot{100.0, TemperatureMode::HighT};

// Brute-force evaluation of the t'-then-w double integral (the form the
// coefficients are defined in), on a dense Simpson product grid. Independent
// of the closed-form kernel route.
double delta_double_integral(const SpectralModel& m, const ThermalBath& bath, double t) {
    const double wmax = 40.0 * m.omega_c;
    auto inner = [&](double tp) {
        // int_0^inf I(w) cos(w t') dw, with w = u^2 substitution for s < 1
        auto f = [&](double w) { return eval_i(m, bath, w) * std::cos(w * tp); };
        const double freq = std::max(tp, 1e-3);
        double acc = 0.0;
        if (m.s < 1.0) {
            const double split = std::min(0.5 * m.omega_0, m.omega_c);
            const double us = std::sqrt(split);
            double su = 0.0;
            // midpoint rule in u on [0, us]
            const int nmid = 20000;
            const double h = us / nmid;
            for (int i = 0; i < nmid; ++i) {
                const double u = (i + 0.5) * h;
                su += f(u * u) * 2.0 * u;
            }
            acc += su * h;
            // Simpson on [split, wmax]
            int n = static_cast<int>(std::ceil((wmax - split) * freq * 16.0 / (2.0 * M_PI)));
            n = std::max(n, 2000);
            if (n % 2) ++n;
            const double hw = (wmax - split) / n;
            double s1 = f(split) + f(wmax);
            for (int i = 1; i < n; ++i) s1 += f(split + i * hw) * (i % 2 ? 4.0 : 2.0);
            acc += s1 * hw / 3.0;
        } else {
            int n = static_cast<int>(std::ceil(wmax * freq * 16.0 / (2.0 * M_PI)));
            n = std::max(n, 2000);
            if (n % 2) ++n;
            const double hw = wmax / n;
            double s1 = f(1e-300) + f(wmax);
            for (int i = 1; i < n; ++i) s1 += f(i * hw) * (i % 2 ? 4.0 : 2.0);
            acc += s1 * hw / 3.0;
        }
        return acc;
    };
    // outer Simpson over t'
    int n = static_cast<int>(std::ceil(t * (40.0 * m.omega_c + m.omega_0) * 16.0 / (2.0 * M_PI)));
    n = std::max(n, 400);
    if (n % 2) ++n;
    const double h = t / n;
    double s1 = 0.0;  // integrand at t'=0 is inner(0)*cos(0): include endpoints
    s1 += inner(0.0) + inner(t) * std::cos(m.omega_0 * t);
    for (int i = 1; i < n; ++i) {
        const double tp = i * h;
        s1 += inner(tp) * std::cos(m.omega_0 * tp) * (i % 2 ? 4.0 : 2.0);
    }
    return 2.0 * s1 * h / 3.0;
}
}  // namespace

TEST_CASE("closed-form inner kernels and their series branches") {
    const double t = 7.3, w0 = 1.0;
    // away from the singular point the closed form matches a direct Simpson
    auto kc_direct = [&](double w) {
        const int n = 20000;
        const double h = t / n;
        double s = 1.0 + std::cos(w * t) * std::cos(w0 * t);
        for (int i = 1; i < n; ++i)
            s += std::cos(w * i * h) * std::cos(w0 * i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    for (double w : {0.0, 0.4, 0.99, 1.7, 9.0}) {
        CHECK(cos_kernel(w, w0, t) == Approx(kc_direct(w)).margin(1e-10));
    }
    // series branch continuous across the switch
    const double eps = 1e-6 * w0;
    // continuity across the branch switch (points 2e-9 apart; |f'| ~ t/4)
    CHECK(cos_kernel(w0 + 0.999e-6, w0, t) ==
          Approx(cos_kernel(w0 + 1.001e-6, w0, t)).margin(5e-9));
    CHECK(cos_kernel(w0, w0, t) == Approx(t / 2 + std::sin(2 * w0 * t) / (4 * w0)).epsilon(1e-12));
    CHECK(sin_kernel(w0, w0, t) == Approx(t / 2 - std::sin(2 * w0 * t) / (4 * w0)).epsilon(1e-12));
    (void)eps;
}

TEST_CASE("Delta(t): trivial zeros and the Markovian plateau") {
    SpectralModel ohm10(1.0, 0.1, 10.0);
    CHECK(compute_delta(ohm10, kHot, 0.0) == 0.0);
    CHECK(compute_delta(SpectralModel(1.0, 0.0, 10.0), kHot, 3.0) == 0.0);
    CHECK_THROWS_AS(compute_delta(ohm10, kHot, -1.0), DomainError);

    // t = 50/wc: within 1% of Delta_M ~ 2.84263
    const double dM = markovian_delta(ohm10, kHot);
    const double d5 = compute_delta(ohm10, kHot, 5.0);
    CHECK(std::abs(d5 - dM) <= 0.01 * dM);
}

TEST_CASE("Delta(t): small-time slope 2 int I dw") {
    SpectralModel ohm10(1.0, 0.1, 10.0);
    const double slope = compute_delta(ohm10, kHot, 1e-3) / 1e-3;
    CHECK(slope == Approx(20.0).epsilon(1e-3));
}

TEST_CASE("gamma(t): zeros, Markovian plateau, temperature independence") {
    SpectralModel ohm(1.0, 1.0, 1.0);
    CHECK(compute_gamma(ohm, 0.0) == 0.0);
    const double gM = markovian_gamma(ohm);
    const double g50 = compute_gamma(ohm, 50.0);
    CHECK(std::abs(g50 - gM) <= 0.01 * gM);  // (pi/2) e^{-1} within 1%
    // gamma carries no thermal weight at all (signature excludes the bath)
}

TEST_CASE("long-time limits where the transients decay (ohmic r>=1, super-ohmic all r)") {
    struct Case { double s, r; };
    for (auto c : {Case{1.0, 1.0}, Case{1.0, 10.0}, Case{3.0, 0.1}, Case{3.0, 1.0},
                   Case{3.0, 10.0}}) {
        SpectralModel m(c.s, 0.1, c.r);
        const double t = 50.0 / std::min(c.r, 1.0);
        const double dM = markovian_delta(m, kHot);
        const double gM = markovian_gamma(m);
        CHECK(std::abs(compute_delta(m, kHot, t) - dM) <= 0.01 * std::abs(dM));
        CHECK(std::abs(compute_gamma(m, t) - gM) <= 0.01 * std::abs(gM));
    }
}

TEST_CASE("heating: quadratic short-time law and frozen golden value") {
    SpectralModel ohm10(1.0, 0.1, 10.0);
    CHECK(compute_heating(ohm10, kHot, 0.0) == 0.0);
    CHECK(compute_heating(SpectralModel(1.0, 0.0, 10.0), kHot, 1.0) == 0.0);
    const double n = compute_heating(ohm10, kHot, 1e-2);
    CHECK(std::abs(n - 1e-3) <= 3e-6);               // N ~ slope t^2/2 = 10 t^2
    CHECK(n == Approx(9.9833166e-4).epsilon(1e-6));  // frozen from an independent run
}

TEST_CASE("big gamma: frozen trapezoid golden and Markovian-mode exactness") {
    SpectralModel ohm10(1.0, 0.1, 10.0);
    // golden value fixed by brute-force trapezoid of gamma(t') on a 1e4 grid
    CHECK(compute_big_gamma(ohm10, 1.0) == Approx(0.0199778523).margin(1e-7));

    // in-test coarser trapezoid cross-check (2001 points)
    const int n = 2000;
    const double h = 1.0 / n;
    double acc = 0.5 * (compute_gamma(ohm10, 0.0) + compute_gamma(ohm10, 1.0));
    for (int i = 1; i < n; ++i) acc += compute_gamma(ohm10, i * h);
    CHECK(compute_big_gamma(ohm10, 1.0) == Approx(2.0 * acc * h).epsilon(1e-5));
}

TEST_CASE("heating via the spectral route agrees with the Simpson-over-t' route") {
    for (double s : {0.5, 1.0, 3.0}) {
        SpectralModel m(s, 0.1, 2.0);
        for (double t : {0.3, 2.0}) {
            const double a = compute_heating(m, kHot, t);
            const double b = compute_heating_time_route(m, kHot, t);
            CHECK(a == Approx(b).epsilon(1e-6).margin(1e-10));
        }
    }
}

TEST_CASE("swapped-order equivalence against the double-integral form (smoke case)") {
    SpectralModel m(1.0, 0.1, 1.3);
    const double t = 2.7;
    const double a = compute_delta(m, kHot, t);
    const double b = delta_double_integral(m, kHot, t);
    CHECK(a == Approx(b).epsilon(1e-4));
}

TEST_CASE("sub-ohmic origin singularity: substitution matches naive [eps,inf) extrapolation") {
    SpectralModel sub(0.5, 0.1, 1.0);
    const double t = 1.2;
    const double full = compute_delta(sub, kHot, t);

    QuadratureConfig cfg;
    auto f = [&](double w) { return 2.0 * eval_i(sub, kHot, w) * cos_kernel(w, 1.0, t); };
    const double panel = M_PI / (4.0 * t);
    const double wmax = cfg.omega_max_factor * sub.omega_c;
    // naive quadrature on [eps, wmax]; integral misses ~ c sqrt(eps):
    // Richardson-extrapolate in sqrt(eps)
    const double e1 = 1e-6, e2 = 4e-6;
    const double v1 = quad::integrate(f, e1, wmax, cfg, panel);
    const double v2 = quad::integrate(f, e2, wmax, cfg, panel);
    const double r1 = std::sqrt(e1), r2 = std::sqrt(e2);
    const double extrap = (v1 * r2 - v2 * r1) / (r2 - r1);
    CHECK(full == Approx(extrap).epsilon(1e-5));
}

TEST_CASE("high-T spectral distribution integrates to g^2 kT wc GammaE(s)") {
    QuadratureConfig cfg;
    struct Case { double s, gamma_e; };
    for (auto c : {Case{1.0, 1.0}, Case{0.5, std::sqrt(M_PI)}, Case{3.0, 2.0}}) {
        SpectralModel m(c.s, 0.3, 1.7);
        auto f = [&](double w) { return eval_i(m, kHot, w); };
        double val;
        const double wmax = cfg.omega_max_factor * m.omega_c;
        if (c.s < 1.0) {
            const double split = std::min(0.5, m.omega_c);
            auto fu = [&](double u) { return f(u * u) * 2.0 * u; };
            val = quad::integrate(fu, 0.0, std::sqrt(split), cfg) +
                  quad::integrate(f, split, wmax, cfg);
        } else {
            val = quad::integrate(f, 0.0, wmax, cfg);
        }
        const double closed = m.g * m.g * kHot.kT * m.omega_c * c.gamma_e;
        CHECK(val == Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("trace: trivial grids and Markovian columns") {
    SpectralModel m(1.0, 0.1, 10.0);
    auto tr0 = trace(m, kHot, {0.0}, CoefficientMode::NonMarkovian);
    CHECK(tr0.delta[0] == 0.0);
    CHECK(tr0.gamma[0] == 0.0);
    CHECK(tr0.heating[0] == 0.0);
    CHECK(tr0.big_gamma[0] == 0.0);

    auto trm = trace(m, kHot, {0.0, 0.5, 1.0}, CoefficientMode::Markovian);
    const double dM = markovian_delta(m, kHot), gM = markovian_gamma(m);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(trm.delta[i] == dM);
        CHECK(trm.gamma[i] == gM);
    }
    CHECK(trm.big_gamma[2] == Approx(2.0 * gM * 1.0).epsilon(1e-14));
    CHECK(trm.heating[1] == Approx(dM * 0.5).epsilon(1e-14));

    CHECK_THROWS_AS(trace(m, kHot, {0.5, 1.0}, CoefficientMode::NonMarkovian), DomainError);
    CHECK_THROWS_AS(trace(m, kHot, {0.0, 1.0, 1.0}, CoefficientMode::NonMarkovian),
                    DomainError);
}

TEST_CASE("trace: cumulative columns match the direct cumulative kernels") {
    SpectralModel m(1.0, 0.1, 0.5);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
    auto tr = trace(m, kHot, grid, CoefficientMode::NonMarkovian);
    CHECK(tr.delta[0] == 0.0);
    CHECK(tr.gamma[0] == 0.0);
    for (std::size_t i : {5u, 12u, 20u}) {
        CHECK(tr.heating[i] ==
              Approx(compute_heating(m, kHot, grid[i])).epsilon(1e-6).margin(1e-10));
        CHECK(tr.big_gamma[i] ==
              Approx(compute_big_gamma(m, grid[i])).epsilon(1e-6).margin(1e-10));
    }
    // d(heating)/dt recovers delta on the grid (relative error 1e-3 midpoints)
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double num = (tr.heating[i + 1] - tr.heating[i - 1]) / (grid[i + 1] - grid[i - 1]);
        const double scale = std::max(std::abs(tr.delta[i]), 0.05);
        CHECK(std::abs(num - tr.delta[i]) <=
              0.05 * scale + 0.3 * std::abs(grid[i + 1] - grid[i - 1]) *
                                 std::abs(tr.delta[i + 1] - tr.delta[i - 1]));
    }
}

TEST_CASE("jolt: off-resonant trace exceeds the Markovian plateau early") {
    SpectralModel m(1.0, 0.1, 0.1);
    std::vector<double> grid;
    for (int i = 0; i <= 40; i++) grid.push_back(0.025 * i);  // t <= 1
    auto tr = trace(m, kHot, grid, CoefficientMode::NonMarkovian);
    double mx = 0.0;
    for (double d : tr.delta) mx = std::max(mx, d);
    CHECK(mx > markovian_delta(m, kHot));
}

TEST_CASE("Delta continuity: grid samples interpolate smoothly") {
    SpectralModel m(1.0, 0.1, 1.0);
    const double h = 1e-3;
    for (double t : {0.5, 2.0, 7.0}) {
        const double mid = compute_delta(m, kHot, t);
        const double avg = 0.5 * (compute_delta(m, kHot, t - h) + compute_delta(m, kHot, t + h));
        CHECK(std::abs(mid - avg) <= 1e-4);
    }
}
