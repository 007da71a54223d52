#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbm/zeno.hpp"

using namespace qbm;
using namespace qbm::zeno;
using Catch::Approx;

namespace {
const ThermalBath kHot{100.0, TemperatureMode::HighT};

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v(n);
    const double la = std::log10(a), lb = std::log10(b);
    for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, la + (lb - la) * i / (n - 1.0));
    return v;
}
}  // namespace

TEST_CASE("Markovian mode: rate = Delta_M, ratio = 1, no crossovers") {
    SpectralModel m(1.0, 0.1, 1.0);
    const double dM = markovian_delta(m, kHot);
    for (double tau : {0.01, 1.0, 50.0}) {
        CHECK(effective_decay_rate(m, kHot, tau, {}, kernels::CoefficientMode::Markovian) ==
              Approx(dM).epsilon(1e-14));
        CHECK(zeno_ratio(m, kHot, tau, {}, kernels::CoefficientMode::Markovian) ==
              Approx(1.0).epsilon(1e-14));
    }
    auto roots = crossover_times(m, kHot, 0.05, 50.0, {}, 100, default_root_tol,
                                 kernels::CoefficientMode::Markovian);
    CHECK(roots.empty());
}

TEST_CASE("zeno limits at r=1 (ohmic)") {
    SpectralModel m(1.0, 0.1, 1.0);
    const double dM = markovian_delta(m, kHot);
    CHECK(effective_decay_rate(m, kHot, 1e-3) < 1e-2 * dM);     // tau -> 0 quadratic law
    CHECK(std::abs(effective_decay_rate(m, kHot, 50.0) - dM) <= 0.02 * dM);
    CHECK(zeno_ratio(m, kHot, 200.0) == Approx(1.0).margin(0.02));  // tau -> inf
}

TEST_CASE("ratio in the high-T limit is independent of g and kT") {
    const double tau = 0.7;
    const double r1 = zeno_ratio(SpectralModel(1.0, 0.1, 2.0), ThermalBath(100.0), tau);
    const double r2 = zeno_ratio(SpectralModel(1.0, 0.25, 2.0), ThermalBath(40.0), tau);
    CHECK(r1 == Approx(r2).epsilon(1e-9));
}

TEST_CASE("off-resonant jolt gives AZE: ohmic r=0.1, wc*tau=1") {
    SpectralModel m(1.0, 0.1, 0.1);
    CHECK(zeno_ratio(m, kHot, 10.0) > 1.0);  // tau = 1/wc -> strong acceleration
}

TEST_CASE("degenerate model") {
    SpectralModel m(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(zeno_ratio(m, kHot, 1.0), DegenerateModelError);
}

TEST_CASE("tau * rate is non-decreasing while Delta >= 0 (ohmic r=10)") {
    SpectralModel m(1.0, 0.1, 10.0);
    double prev = 0.0;
    for (double tau : {0.1, 0.3, 0.8, 1.5, 3.0, 5.0}) {
        const double n = tau * effective_decay_rate(m, kHot, tau);
        CHECK(n >= prev - 1e-12);
        prev = n;
    }
}

TEST_CASE("crossover structure: ohmic r=2 rootless over [0.05,50]") {
    SpectralModel m(1.0, 0.1, 2.0);
    auto roots = crossover_times(m, kHot, 0.05 / 2.0, 50.0 / 2.0);
    CHECK(roots.empty());
}

TEST_CASE("crossover structure: super-ohmic r=1.2 has exactly two roots in [0.05,10]") {
    SpectralModel m(3.0, 0.1, 1.2);
    auto roots = crossover_times(m, kHot, 0.05 / 1.2, 10.0 / 1.2);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] * 1.2 == Approx(0.752).margin(0.02));  // wc*tau* frozen from scan
    CHECK(roots[1] * 1.2 == Approx(1.707).margin(0.02));
    for (double t : roots)
        CHECK(std::abs(zeno_ratio(m, kHot, t) - 1.0) < default_root_tol);
}

TEST_CASE("crossover_map: 1x1 Markovian grid") {
    auto map = crossover_map(ReservoirKind::Ohmic, 0.1, kHot, {1.0}, {1.0}, {}, 1,
                             default_boundary_tol, default_root_tol, 0.0,
                             kernels::CoefficientMode::Markovian);
    REQUIRE(map.cells.size() == 1);
    REQUIRE(map.cells[0].size() == 1);
    CHECK(map.cells[0][0].ratio == Approx(1.0).epsilon(1e-14));
    CHECK(map.cells[0][0].classification == Classification::Boundary);
    CHECK(map.failed_cells == 0);
}

TEST_CASE("crossover_map: sub-ohmic columns always cross; deterministic in thread count") {
    std::vector<double> rg{0.3, 1.0, 2.0};
    auto tg = logspace(0.05, 10.0, 8);
    auto m1 = crossover_map(ReservoirKind::SubOhmic, 0.1, kHot, rg, tg, {}, 1);
    auto m2 = crossover_map(ReservoirKind::SubOhmic, 0.1, kHot, rg, tg, {}, 2);
    for (std::size_t ir = 0; ir < rg.size(); ++ir) {
        CHECK(!m1.roots[ir].empty());
        REQUIRE(m1.roots[ir].size() == m2.roots[ir].size());
        for (std::size_t k = 0; k < m1.roots[ir].size(); ++k)
            CHECK(m1.roots[ir][k] == m2.roots[ir][k]);  // bitwise
        for (std::size_t it = 0; it < tg.size(); ++it)
            CHECK(m1.cells[ir][it].ratio == m2.cells[ir][it].ratio);  // bitwise
    }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(crossover_map(ReservoirKind::Ohmic, 0.1, kHot, {}, {1.0}), DomainError);
    CHECK_THROWS_AS(crossover_map(ReservoirKind::Ohmic, 0.1, kHot, {1.0}, {-1.0}),
                    DomainError);
    SpectralModel m(1.0, 0.1, 1.0);
    CHECK_THROWS_AS(crossover_times(m, kHot, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(effective_decay_rate(m, kHot, 0.0), DomainError);
}
