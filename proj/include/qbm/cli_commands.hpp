// cli_commands.hpp — coeffs / fringe / zeno / certify command implementations
//
// Output contract: every file starts with a '#'-prefixed header block (tool
// version, echoed config, column names); data rows are comma-separated with
// locale-independent formatting; identical config -> byte-identical files.
// Timestamps appear only in the certification report under "timestamp".

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qbm/decoherence.hpp"
#include "qbm/format.hpp"
#include "qbm/oracle.hpp"
#include "qbm/run_config.hpp"
#include "qbm/version.hpp"
#include "qbm/zeno.hpp"

namespace qbm::cli {

inline unsigned effective_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return static_cast<unsigned>(cfg.threads);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + (dir / name).string());
    return f;
}

inline void write_header(std::ofstream& f, const RunConfig& cfg, const std::string& command,
                         const std::string& columns,
                         const std::vector<std::string>& extra = {}) {
    f << "# qbm " << qbm::version << "\n";
    f << "# command: " << command << "\n";
    for (const auto& [k, v] : cfg.echo()) f << "# " << k << " = " << v << "\n";
    for (const auto& line : extra) f << "# " << line << "\n";
    f << "# columns: " << columns << "\n";
}

inline std::vector<double> linear_grid(double maxv, int points) {
    std::vector<double> g;
    g.reserve(points);
    if (points == 1) {
        g.push_back(0.0);
        return g;
    }
    for (int i = 0; i < points; ++i) g.push_back(maxv * i / (points - 1.0));
    return g;
}

inline std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g;
    g.reserve(points);
    if (points == 1) {
        g.push_back(lo);
        return g;
    }
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < points; ++i)
        g.push_back(std::exp(la + (lb - la) * i / (points - 1.0)));
    return g;
}

inline SpectralModel model_for(const std::string& name, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.reservoir = name;
    return c.model();
}

}  // namespace detail

// --- coeffs ---------------------------------------------------------------

inline int cmd_coeffs(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = detail::linear_grid(cfg.t_max, cfg.t_points);
    const auto tr = kernels::trace(cfg.model(), cfg.bath(), grid, cfg.coefficient_mode(),
                                   cfg.quadrature());
    auto f = detail::open_output(cfg.out, "coeffs.csv");
    detail::write_header(f, cfg, "coeffs", "t,omega_c_t,delta,gamma,heating,big_gamma",
                         {"delta_M = " + format_number(tr.delta_markov),
                          "gamma_M = " + format_number(tr.gamma_markov)});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f << format_number(tr.times[i]) << ',' << format_number(tr.times[i] * cfg.model().omega_c)
          << ',' << format_number(tr.delta[i]) << ',' << format_number(tr.gamma[i]) << ','
          << format_number(tr.heating[i]) << ',' << format_number(tr.big_gamma[i]) << "\n";
    }
    return 0;
}

// --- fringe ---------------------------------------------------------------

inline int cmd_fringe(const RunConfig& cfg) {
    cfg.validate();
    const auto names = cfg.reservoir_list();
    const double g2 = cfg.g * cfg.g;
    // Gamma' t = 2 g^2 t; at g = 0 the unitless axis degenerates, use raw values
    const double per_time = g2 > 0.0 ? 2.0 * g2 : 1.0;
    std::vector<double> times;
    times.reserve(cfg.gpt_points);
    for (int i = 0; i < cfg.gpt_points; ++i)
        times.push_back(cfg.gpt_max * i / (cfg.gpt_points - 1.0) / per_time);

    decoherence::CatState cat(cfg.alpha);
    std::vector<SpectralModel> models;
    for (const auto& n : names) models.push_back(detail::model_for(n, cfg));

    auto ranked = decoherence::compare_reservoirs(cat, models, cfg.bath(), times,
                                                  cfg.fringe_regime(), cfg.quadrature(),
                                                  cfg.coefficient_mode());
    // traces back in input order for the columns; ranking line by area
    std::vector<const decoherence::RankedTrace*> by_input(names.size(), nullptr);
    std::string ranking;
    for (const auto& rt : ranked) {
        by_input[rt.input_index] = &rt;
        if (!ranking.empty()) ranking += " > ";
        ranking += names[rt.input_index] + " (area " + format_number(rt.area) + ")";
    }

    const auto mk = decoherence::fringe_trace(cat, models.front(), cfg.bath(), times,
                                              cfg.fringe_regime(),
                                              kernels::CoefficientMode::Markovian,
                                              cfg.quadrature());

    std::string columns = "Gamma_prime_t";
    for (const auto& n : names) columns += ",F_" + n;
    columns += ",F_markovian";
    std::vector<std::string> extra{"ranking (slowest decoherence first): " + ranking};
    for (const auto* rt : by_input)
        if (rt && rt->trace.regime_warning) extra.push_back("warning: " + rt->trace.warning);

    auto f = detail::open_output(cfg.out, "fringe.csv");
    detail::write_header(f, cfg, "fringe", columns, extra);
    for (std::size_t i = 0; i < times.size(); ++i) {
        f << format_number(per_time * times[i]);
        for (const auto* rt : by_input) f << ',' << format_number(rt->trace.visibility[i]);
        f << ',' << format_number(mk.visibility[i]) << "\n";
    }

    auto gp = detail::open_output(cfg.out, "fringe.gp");
    gp << "# gnuplot script: fringe visibility vs unitless time\n"
       << "set datafile separator ','\n"
       << "set xlabel \"Gamma' t = 2 g^2 w0 t\"\n"
       << "set ylabel 'fringe visibility F'\n"
       << "set yrange [0:1.05]\n"
       << "set key top right\n"
       << "set multiplot\n"
       << "plot ";
    for (std::size_t k = 0; k < names.size(); ++k)
        gp << (k ? ", " : "") << "'fringe.csv' using 1:" << (k + 2) << " with lines title '"
           << names[k] << "'";
    gp << "\n"
       << "# inset: Markovian vs non-Markovian for the first reservoir\n"
       << "set origin 0.55, 0.5\nset size 0.42, 0.45\nunset xlabel\nunset ylabel\n"
       << "set xrange [0:" << format_number(cfg.gpt_max / 10.0) << "]\n"
       << "plot 'fringe.csv' using 1:2 with lines title 'non-Markovian', "
       << "'fringe.csv' using 1:" << (names.size() + 2)
       << " with lines title 'Markovian'\n"
       << "unset multiplot\n";
    return 0;
}

// --- zeno -----------------------------------------------------------------

inline int cmd_zeno(const RunConfig& cfg) {
    cfg.validate();
    const auto r_grid = [&] {
        std::vector<double> g;
        if (cfg.r_points == 1)
            g.push_back(cfg.r_min);
        else
            for (int i = 0; i < cfg.r_points; ++i)
                g.push_back(cfg.r_min + (cfg.r_max - cfg.r_min) * i / (cfg.r_points - 1.0));
        return g;
    }();
    const auto wct_grid = detail::log_grid(cfg.wct_min, cfg.wct_max, cfg.wct_points);

    const auto map = zeno::crossover_map(cfg.kind(), cfg.g, cfg.bath(), r_grid, wct_grid,
                                         cfg.quadrature(), effective_threads(cfg),
                                         cfg.boundary_tol, cfg.root_tol, cfg.s,
                                         cfg.coefficient_mode());

    auto f = detail::open_output(cfg.out, "zeno_map.csv");
    detail::write_header(f, cfg, "zeno", "r,omega_c_tau,ratio,classification");
    for (std::size_t ir = 0; ir < map.r_grid.size(); ++ir)
        for (std::size_t it = 0; it < map.tau_grid.size(); ++it) {
            const auto& p = map.cells[ir][it];
            f << format_number(p.r) << ',' << format_number(p.omega_c_tau) << ','
              << (std::isnan(p.ratio) ? std::string("nan") : format_number(p.ratio)) << ','
              << zeno::classification_name(p.classification) << "\n";
        }

    auto fr = detail::open_output(cfg.out, "zeno_roots.csv");
    detail::write_header(fr, cfg, "zeno", "r,root_index,omega_c_tau_star");
    for (std::size_t ir = 0; ir < map.r_grid.size(); ++ir)
        for (std::size_t k = 0; k < map.roots[ir].size(); ++k)
            fr << format_number(map.r_grid[ir]) << ',' << format_number(static_cast<int>(k))
               << ',' << format_number(map.roots[ir][k]) << "\n";

    auto gp = detail::open_output(cfg.out, "zeno_map.gp");
    gp << "# gnuplot script: QZE/AZE crossover map, bold contour at ratio = 1\n"
       << "set datafile separator ','\n"
       << "set xlabel 'r = w_c/w_0'\nset ylabel 'w_c tau'\n"
       << "set logscale y\n"
       << "set view map\n"
       << "set dgrid3d " << cfg.r_points << "," << cfg.wct_points << "\n"
       << "set contour base\nset cntrparam levels discrete 1.0\n"
       << "set style line 1 lw 3 lc rgb 'black'\n"
       << "splot 'zeno_map.csv' using 1:2:3 with pm3d notitle, \\\n"
       << "      'zeno_roots.csv' using 1:3:(1.0) with points pt 7 ps 0.3 title 'tau*'\n";

    return map.failed_cells > 0 ? 2 : 0;
}

// --- certify ----------------------------------------------------------------
//
// Oracle-vs-closed-form certification suites. Parameter sets are pinned;
// config g = 0 switches every suite to its free-evolution smoke variant.

struct SuiteResult {
    std::string name;
    bool pass = false;
    nlohmann::json details;
};

namespace detail {

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    for (const auto& [k, v] : cfg.echo()) j[k] = v;
    return j;
}

inline SuiteResult fringe_suite(bool resonant, double g, double kT, int dim,
                                const QuadratureConfig& qcfg) {
    SuiteResult res;
    res.name = resonant ? "fringe_resonant" : "fringe_offresonant";
    const double tol = resonant ? 0.05 : 0.02;
    const double alpha = 1.0;
    const double r = resonant ? 10.0 : 0.1;
    SpectralModel m(1.0, g, r);
    ThermalBath bath(kT, TemperatureMode::HighT);

    // windows: off-resonant Gamma't in [0,0.5] (t<=25 at g=0.1);
    // resonant t in [0,1.5] covering the visible decay
    const double t_max = resonant ? 1.5 : (g > 0.0 ? 0.5 / (2.0 * g * g) : 25.0);
    double max_negativity = 0.0;
    const int samples = resonant ? 31 : 51;
    std::vector<double> times;
    for (int i = 0; i < samples; ++i) times.push_back(t_max * i / (samples - 1.0));

    auto run_dim = [&](int d) {
        oracle::EvolutionSpec spec =
            g > 0.0 ? oracle::memoized_spec(m, bath, t_max,
                                            resonant ? oracle::Equation::NonSecular
                                                     : oracle::Equation::Secular,
                                            qcfg)
                    : oracle::EvolutionSpec{};
        if (g == 0.0) {
            spec.equation = resonant ? oracle::Equation::NonSecular : oracle::Equation::Secular;
            spec.delta = [](double) { return 0.0; };
            spec.gamma = [](double) { return 0.0; };
        }
        // the secular TCL2 map goes transiently non-CP at r<<1 (negative
        // coefficient episodes); record the negativity instead of aborting
        if (!resonant) spec.negativity_tol = 1e300;
        // keep the stepper stable at the truncation edge and its below-tolerance
        // junk well under the 1e-10 hermiticity guard
        spec.abs_tol = 1e-12;
        double peak = 0.0;
        for (double t : times) peak = std::max(peak, std::abs(spec.delta(t)));
        if (peak > 0.0) spec.max_step = 2.5 / (2.0 * peak * d);
        auto cat = oracle::evolve_cat_components(alpha, d, spec, times);
        for (const auto& st : cat.peak_plus)
            max_negativity = std::min(max_negativity, st.min_eigenvalue());
        return oracle::fringe_from_trajectory(cat, alpha);
    };

    decoherence::CatState cs(alpha);
    const auto regime =
        resonant ? decoherence::Regime::Resonant : decoherence::Regime::OffResonant;
    std::vector<double> closed;
    for (double t : times) {
        const double N = g > 0.0 ? kernels::compute_heating(m, bath, t, qcfg) : 0.0;
        const double G = g > 0.0 ? kernels::compute_big_gamma(m, t, qcfg) : 0.0;
        closed.push_back(decoherence::fringe_visibility(cs, N, G, regime));
    }

    double max_dev = 0.0;
    const auto fr = run_dim(dim);
    for (std::size_t i = 0; i < times.size(); ++i)
        max_dev = std::max(max_dev, std::abs(fr[i] - closed[i]));

    res.details["dim"] = dim;
    res.details["alpha"] = alpha;
    res.details["r"] = r;
    res.details["g"] = g;
    res.details["samples"] = samples;
    res.details["t_max"] = t_max;
    res.details["tolerance_abs"] = tol;
    res.details["max_abs_deviation"] = max_dev;
    res.details["max_state_negativity"] = max_negativity;
    res.pass = max_dev <= tol;

    // truncation-robustness: doubled dimension
    try {
        const auto fr2 = run_dim(2 * dim);
        double change = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            change = std::max(change, std::abs(fr2[i] - fr[i]));
        res.details["dim_doubling_max_change"] = change;
        res.details["dim_doubling_stable"] = change < tol / 4.0;
    } catch (const std::exception& e) {
        res.details["dim_doubling_max_change"] = nullptr;
        res.details["dim_doubling_stable"] = false;
        res.details["dim_doubling_note"] = e.what();
    }
    return res;
}

inline SuiteResult zeno_rate_suite(double g, double kT, int dim,
                                   const QuadratureConfig& qcfg) {
    SuiteResult res;
    res.name = "zeno_rate";
    const double tau = 0.3;
    const int n_meas = 10;
    SpectralModel m(1.0, g, 1.0);
    ThermalBath bath(kT, TemperatureMode::HighT);
    oracle::EvolutionSpec spec;
    if (g > 0.0) {
        spec = oracle::memoized_spec(m, bath, tau, oracle::Equation::NonSecular, qcfg);
    } else {
        spec.equation = oracle::Equation::NonSecular;
        spec.delta = [](double) { return 0.0; };
        spec.gamma = [](double) { return 0.0; };
    }
    const auto sr = oracle::survival_probability(1, tau, n_meas, spec, dim);
    const double reference =
        g > 0.0 ? kernels::compute_heating(m, bath, tau, qcfg) / tau : 0.0;
    const double scale = std::max(std::abs(reference), 1e-300);
    const double rel = g > 0.0 ? std::abs(sr.fitted_rate - reference) / scale
                               : std::abs(sr.fitted_rate);
    res.details["n"] = 1;
    res.details["tau"] = tau;
    res.details["num_measurements"] = n_meas;
    res.details["dim"] = dim;
    res.details["fitted_rate"] = sr.fitted_rate;
    res.details["reference_N_over_tau"] = reference;
    res.details["rel_deviation"] = rel;
    res.details["tolerance_rel"] = 0.05;
    res.details["p_first_cycle"] = sr.p_first_cycle;
    res.details["premise_ok"] = sr.premise_ok;
    // degeneracy-normalized diagnostic: depletion of |n> runs at ~(2n+1) Delta
    res.details["fitted_rate_per_quantum"] = sr.fitted_rate / 3.0;
    res.details["normalized_rel_deviation"] =
        g > 0.0 ? std::abs(sr.fitted_rate / 3.0 - reference) / scale : 0.0;
    res.pass = rel <= 0.05;
    return res;
}

inline SuiteResult zeno_n_independence_suite(double g, double kT, int dim,
                                             const QuadratureConfig& qcfg) {
    SuiteResult res;
    res.name = "zeno_n_independence";
    const double tau = 0.3;
    const int n_meas = 10;
    SpectralModel m(1.0, g, 1.0);
    ThermalBath bath(kT, TemperatureMode::HighT);
    oracle::EvolutionSpec spec;
    if (g > 0.0) {
        spec = oracle::memoized_spec(m, bath, tau, oracle::Equation::NonSecular, qcfg);
    } else {
        spec.equation = oracle::Equation::NonSecular;
        spec.delta = [](double) { return 0.0; };
        spec.gamma = [](double) { return 0.0; };
    }
    std::vector<double> rates, normalized;
    for (int n = 0; n <= 2; ++n) {
        const auto sr = oracle::survival_probability(n, tau, n_meas, spec, dim);
        rates.push_back(sr.fitted_rate);
        normalized.push_back(sr.fitted_rate / (2.0 * n + 1.0));
    }
    auto spread = [](const std::vector<double>& v) {
        const double mx = *std::max_element(v.begin(), v.end());
        const double mn = *std::min_element(v.begin(), v.end());
        return mx > 0.0 ? (mx - mn) / mx : 0.0;
    };
    res.details["rates"] = rates;
    res.details["max_spread_rel"] = spread(rates);
    res.details["tolerance_rel"] = 0.10;
    res.details["rates_per_quantum"] = normalized;
    res.details["normalized_max_spread_rel"] = spread(normalized);
    res.pass = spread(rates) <= 0.10;
    return res;
}

}  // namespace detail

inline int cmd_certify(const RunConfig& cfg) {
    cfg.validate();
    const auto qcfg = cfg.quadrature();
    const bool smoke = cfg.g == 0.0;
    const double g_fringe = smoke ? 0.0 : 0.1;
    const double g_zeno = smoke ? 0.0 : 0.05;

    std::vector<SuiteResult> suites;
    suites.push_back(detail::fringe_suite(false, g_fringe, cfg.kT, cfg.cert_dim_off, qcfg));
    suites.push_back(detail::fringe_suite(true, g_fringe, cfg.kT, cfg.cert_dim_res, qcfg));
    suites.push_back(detail::zeno_rate_suite(g_zeno, cfg.kT, cfg.cert_dim_fock, qcfg));
    suites.push_back(
        detail::zeno_n_independence_suite(g_zeno, cfg.kT, cfg.cert_dim_fock, qcfg));

    nlohmann::json report;
    report["version"] = qbm::version;
    const auto now = std::chrono::system_clock::now();
    report["timestamp"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::seconds>(
                                   now.time_since_epoch())
                                   .count());
    report["config"] = detail::config_json(cfg);
    report["smoke_profile"] = smoke;
    bool all = true;
    for (const auto& s : suites) {
        nlohmann::json js = s.details;
        js["name"] = s.name;
        js["pass"] = s.pass;
        report["suites"].push_back(js);
        all = all && s.pass;
    }
    report["all_pass"] = all;

    auto f = detail::open_output(cfg.out, "certify_report.json");
    f << report.dump(2) << "\n";
    return all ? 0 : 3;
}

}  // namespace qbm::cli
