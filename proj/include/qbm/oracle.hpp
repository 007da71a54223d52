// oracle.hpp — brute-force validator: integrates the secular and nonsecular
// high-temperature master equations in a truncated Fock basis and reconstructs
// fringe visibility and measured survival probabilities from the trajectories.
//
// Secular:     drho/dt = (D+g)/2 [2 a rho a† - a†a rho - rho a†a]
//                      + (D-g)/2 [2 a† rho a - a a† rho - rho a a†]
// NonSecular adds the counter-rotating terms as printed:
//              + (D-g)/2 e^{-2i w0 t} [2 a rho a - a^2 rho - rho a^2]
//              + (D-g)/2 e^{+2i w0 t} [2 a† rho a† - a†^2 rho - rho a†^2]

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "qbm/fock.hpp"
#include "qbm/interpolant.hpp"
#include "qbm/kernels.hpp"

namespace qbm::oracle {

using fock::Complex;
using fock::Matrix;

struct DensityMatrix {
    Matrix entries;

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m) : entries(std::move(m)) {
        if (entries.rows() != entries.cols())
            throw DomainError("DensityMatrix: matrix must be square");
    }

    int dim() const { return static_cast<int>(entries.rows()); }
    Complex trace() const { return entries.trace(); }

    double hermiticity_error() const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(
            (0.5 * (entries + entries.adjoint())).eval());
        return es.eigenvalues().minCoeff();
    }
};

enum class Equation { Secular, NonSecular };

using CoefficientFn = std::function<double(double)>;

struct EvolutionSpec {
    Equation equation = Equation::Secular;
    CoefficientFn delta;           // Delta(t)
    CoefficientFn gamma;           // gamma(t)
    double omega_0 = 1.0;          // required by the e^{±2i w0 t} phases
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double hermiticity_tol = 1e-10;
    double trace_tol = 1e-6;
    double negativity_tol = 1e-6;
    // explicit-RK stability bound: the dissipator spectrum reaches
    // ~2 max|Delta| dim at the truncation edge, so cap h when set (0 = none)
    double max_step = 0.0;
};

// Markovian-constant coefficient source
inline EvolutionSpec markovian_spec(const SpectralModel& m, const ThermalBath& bath,
                                    Equation eq = Equation::Secular) {
    EvolutionSpec spec;
    spec.equation = eq;
    spec.omega_0 = m.omega_0;
    const double dM = markovian_delta(m, bath);
    const double gM = markovian_gamma(m);
    spec.delta = [dM](double) { return dM; };
    spec.gamma = [gM](double) { return gM; };
    return spec;
}

// Coefficients memoized on a dense grid (step 1e-3/wc) with cubic interpolation,
// so the ODE stepper never re-triggers quadrature.
inline EvolutionSpec memoized_spec(const SpectralModel& m, const ThermalBath& bath,
                                   double t_max, Equation eq,
                                   const QuadratureConfig& cfg = {}) {
    EvolutionSpec spec;
    spec.equation = eq;
    spec.omega_0 = m.omega_0;
    const double dt = 1e-3 / m.omega_c;
    const std::size_t n = static_cast<std::size_t>(std::ceil(t_max / dt)) + 2;
    std::vector<double> dv(n), gv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = dt * static_cast<double>(i);
        dv[i] = kernels::compute_delta(m, bath, t, cfg);
        gv[i] = kernels::compute_gamma(m, t, cfg);
    }
    auto ds = std::make_shared<CubicSpline>(0.0, dt, std::move(dv));
    auto gs = std::make_shared<CubicSpline>(0.0, dt, std::move(gv));
    spec.delta = [ds](double t) { return (*ds)(t); };
    spec.gamma = [gs](double t) { return (*gs)(t); };
    return spec;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

namespace detail {

class Rhs {
  public:
    explicit Rhs(int dim) : s_(fock::sqrt_table(dim)) {}

    void operator()(const EvolutionSpec& spec, double t, const Matrix& rho, Matrix& out) {
        using namespace fock;
        const double D = spec.delta(t);
        const double G = spec.gamma(t);
        const double kp = 0.5 * (D + G);
        const double km = 0.5 * (D - G);

        apply_a_left(rho, t1_, s_);        // a rho
        apply_adag_right(t1_, t2_, s_);    // a rho a†
        apply_adag_left(t1_, t3_, s_);     // a†a rho
        apply_adag_right(rho, t4_, s_);    // rho a†
        apply_a_right(t4_, t5_, s_);       // rho a†a
        out = kp * (2.0 * t2_ - t3_ - t5_);

        apply_adag_left(rho, t2_, s_);     // a† rho
        apply_a_right(t2_, t3_, s_);       // a† rho a
        apply_a_left(t2_, t4_, s_);        // a a† rho
        apply_a_right(rho, t5_, s_);       // rho a
        apply_adag_right(t5_, t6_, s_);    // rho a a†
        out += km * (2.0 * t3_ - t4_ - t6_);

        if (spec.equation == Equation::NonSecular) {
            const Complex ph = std::exp(Complex(0.0, -2.0 * spec.omega_0 * t));
            apply_a_right(t1_, t2_, s_);   // a rho a      (t1_ = a rho)
            apply_a_left(t1_, t3_, s_);    // a^2 rho
            apply_a_right(t5_, t4_, s_);   // rho a^2      (t5_ = rho a)
            out += (km * ph) * (2.0 * t2_ - t3_ - t4_);

            apply_adag_left(rho, t1_, s_);     // a† rho
            apply_adag_right(t1_, t2_, s_);    // a† rho a†
            apply_adag_left(t1_, t3_, s_);     // a†^2 rho
            apply_adag_right(rho, t5_, s_);    // rho a†
            apply_adag_right(t5_, t4_, s_);    // rho a†^2
            out += (km * std::conj(ph)) * (2.0 * t2_ - t3_ - t4_);
        }
    }

  private:
    std::vector<double> s_;
    Matrix t1_, t2_, t3_, t4_, t5_, t6_;
};

// Dormand–Prince 5(4) embedded pair with FSAL
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    // clang-format off
    static constexpr double a21 = 1.0/5;
    static constexpr double a31 = 3.0/40,       a32 = 9.0/40;
    static constexpr double a41 = 44.0/45,      a42 = -56.0/15,      a43 = 32.0/9;
    static constexpr double a51 = 19372.0/6561, a52 = -25360.0/2187, a53 = 64448.0/6561, a54 = -212.0/729;
    static constexpr double a61 = 9017.0/3168,  a62 = -355.0/33,     a63 = 46732.0/5247, a64 = 49.0/176,  a65 = -5103.0/18656;
    static constexpr double b1 = 35.0/384,      b3 = 500.0/1113,     b4 = 125.0/192,     b5 = -2187.0/6784, b6 = 11.0/84;
    static constexpr double e1 = 71.0/57600,    e3 = -71.0/16695,    e4 = 71.0/1920,     e5 = -17253.0/339200, e6 = 22.0/525, e7 = -1.0/40;
    // clang-format on
};

}  // namespace detail

// Integrate drho/dt over [t0, t1] with an adaptive embedded Runge–Kutta pair,
// sampling at the requested times (which must be increasing, within [t0, t1]).
inline Trajectory evolve(const DensityMatrix& rho0, const EvolutionSpec& spec,
                         const std::vector<double>& sample_times) {
    if (sample_times.empty()) throw DomainError("evolve: no sample times");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw DomainError("evolve: sample times must be increasing");
    if (!spec.delta || !spec.gamma)
        throw DomainError("evolve: coefficient callbacks not set");

    const int dim = rho0.dim();
    detail::Rhs rhs(dim);
    using D = detail::Dopri5;

    const Complex tr0 = rho0.trace();
    const bool is_state = std::abs(tr0 - Complex(1.0, 0.0)) < 1e-9 &&
                          rho0.hermiticity_error() < 1e-9;

    Trajectory traj;
    traj.times = sample_times;
    traj.states.reserve(sample_times.size());

    Matrix y = rho0.entries;
    double t = 0.0;  // evolution starts at t=0; samples may begin later
    Matrix k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
    rhs(spec, t, y, k1);

    auto check_and_record = [&](double ts, const Matrix& m) {
        DensityMatrix dm{m};
        const double herm = dm.hermiticity_error();
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if (herm > spec.hermiticity_tol * scale)
            throw TruncationError("evolve: hermiticity drift " + std::to_string(herm) +
                                  " at t=" + std::to_string(ts));
        const double drift = std::abs(dm.trace() - tr0);
        if (drift > spec.trace_tol)
            throw TruncationError("evolve: trace drift " + std::to_string(drift) +
                                  " at t=" + std::to_string(ts));
        if (is_state && dm.min_eigenvalue() < -spec.negativity_tol)
            throw TruncationError("evolve: state negativity " +
                                  std::to_string(dm.min_eigenvalue()) +
                                  " at t=" + std::to_string(ts));
        traj.states.push_back(std::move(dm));
    };

    std::size_t isample = 0;
    double h = 1e-4;
    const double t_end = sample_times.back();
    while (isample < sample_times.size()) {
        const double target = sample_times[isample];
        if (t >= target - 1e-14 * std::max(1.0, target)) {
            check_and_record(target, y);
            ++isample;
            continue;
        }
        if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
        const double ht = std::min(h, target - t);
        if (ht < 1e-14 * std::max(1.0, t_end))
            throw TruncationError("evolve: step size underflow at t=" + std::to_string(t));

        rhs(spec, t + D::c2 * ht, (y + ht * D::a21 * k1).eval(), k2);
        rhs(spec, t + D::c3 * ht, (y + ht * (D::a31 * k1 + D::a32 * k2)).eval(), k3);
        rhs(spec, t + D::c4 * ht, (y + ht * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3)).eval(), k4);
        rhs(spec, t + D::c5 * ht,
            (y + ht * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4)).eval(), k5);
        rhs(spec, t + ht,
            (y + ht * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5)).eval(),
            k6);
        y5 = y + ht * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
        rhs(spec, t + ht, y5, k7);

        // error estimate from the embedded 4th-order solution
        ytmp = ht * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);
        double err = 0.0;
        for (int j = 0; j < ytmp.cols(); ++j)
            for (int i = 0; i < ytmp.rows(); ++i) {
                const double sc =
                    spec.abs_tol +
                    spec.rel_tol * std::max(std::abs(y(i, j)), std::abs(y5(i, j)));
                err = std::max(err, std::abs(ytmp(i, j)) / sc);
            }

        if (err <= 1.0) {
            t += ht;
            y.swap(y5);
            k1.swap(k7);  // FSAL
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = std::max(ht * fac, 1e-16);
    }
    return traj;
}

// --- Schrödinger-cat fringe reconstruction -------------------------------
//
// The cat Wigner function splits into two coherent peaks and one interference
// term; each component evolves independently under the linear master equation.
// F(t) = (1/2) W_I(0,t) / sqrt(W_+(alpha,t) W_-(-alpha,t)), peaks static at
// ±alpha in the interaction picture.

struct CatTrajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> peak_plus;      // |alpha><alpha|
    std::vector<DensityMatrix> peak_minus;     // |-alpha><-alpha|
    std::vector<DensityMatrix> interference;   // |alpha><-alpha| + h.c.
    double alpha = 1.0;
};

inline CatTrajectory evolve_cat_components(double alpha, int dim, const EvolutionSpec& spec,
                                           const std::vector<double>& sample_times) {
    if (!(alpha > 0.0)) throw DomainError("evolve_cat_components: alpha must be > 0");
    const auto cp = fock::coherent_vector(alpha, dim);
    const auto cm = fock::coherent_vector(-alpha, dim);
    CatTrajectory cat;
    cat.alpha = alpha;
    cat.times = sample_times;
    cat.peak_plus = evolve(DensityMatrix{(cp * cp.adjoint()).eval()}, spec, sample_times).states;
    cat.peak_minus = evolve(DensityMatrix{(cm * cm.adjoint()).eval()}, spec, sample_times).states;
    Matrix inter = cp * cm.adjoint();
    inter += inter.adjoint().eval();
    cat.interference = evolve(DensityMatrix{inter}, spec, sample_times).states;
    return cat;
}

inline std::vector<double> fringe_from_trajectory(const CatTrajectory& traj, double alpha) {
    if (traj.peak_plus.empty() || traj.peak_plus.size() != traj.interference.size() ||
        traj.peak_minus.size() != traj.interference.size())
        throw DomainError("fringe_from_trajectory: inconsistent component trajectories");
    const int dim = traj.peak_plus.front().dim();
    const Matrix obs0 = fock::parity(dim);
    const Matrix obsp = fock::displaced_parity(Complex(alpha, 0.0), dim);
    const Matrix obsm = fock::displaced_parity(Complex(-alpha, 0.0), dim);
    std::vector<double> fringe;
    fringe.reserve(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double wi = fock::wigner_with_obs(traj.interference[k].entries, obs0);
        const double wp = fock::wigner_with_obs(traj.peak_plus[k].entries, obsp);
        const double wm = fock::wigner_with_obs(traj.peak_minus[k].entries, obsm);
        if (wp <= 0.0 || wm <= 0.0)
            throw UndefinedVisibilityError(
                "fringe_from_trajectory: non-positive peak value at t=" +
                std::to_string(traj.times[k]));
        fringe.push_back(0.5 * wi / std::sqrt(wp * wm));
    }
    return fringe;
}

// --- survival probability under repeated nonselective measurements --------

struct SurvivalResult {
    double p_survival = 1.0;     // P_n after N_m measurement cycles
    double fitted_rate = 0.0;    // -ln(P)/(N_m tau)
    double p_first_cycle = 1.0;  // P_n(tau), the short-time premise
    bool premise_ok = true;      // P_n(tau) >= 0.9
};

inline constexpr double survival_premise_threshold = 0.9;

// Each cycle evolves for tau (coefficients restarted at t=0: the measurement
// resets the system-reservoir correlations) and projects onto the Fock basis.
inline SurvivalResult survival_probability(int n, double tau, int num_measurements,
                                           const EvolutionSpec& spec, int dim = 0) {
    if (!(tau > 0.0)) throw DomainError("survival_probability: tau must be > 0");
    if (num_measurements < 1)
        throw DomainError("survival_probability: need at least one measurement");
    if (dim <= 0) dim = std::max(8 * (n + 1), 32);
    if (n >= dim / 2) throw DomainError("survival_probability: require n < dim/2");

    Matrix rho = Matrix::Zero(dim, dim);
    rho(n, n) = 1.0;
    SurvivalResult res;
    for (int cycle = 0; cycle < num_measurements; ++cycle) {
        auto traj = evolve(DensityMatrix{rho}, spec, {0.0, tau});
        const Eigen::VectorXcd pops = traj.states.back().entries.diagonal();
        rho = pops.asDiagonal();  // nonselective energy measurement
        if (cycle == 0) {
            res.p_first_cycle = rho(n, n).real();
            res.premise_ok = res.p_first_cycle >= survival_premise_threshold;
        }
    }
    res.p_survival = rho(n, n).real();
    res.fitted_rate = -std::log(res.p_survival) / (num_measurements * tau);
    return res;
}

}  // namespace qbm::oracle
