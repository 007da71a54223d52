// run_config.hpp — flat key=value run configuration ('#' comments, no nesting)

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qbm/decoherence.hpp"
#include "qbm/errors.hpp"
#include "qbm/format.hpp"
#include "qbm/kernels.hpp"
#include "qbm/spectral.hpp"
#include "qbm/zeno.hpp"

namespace qbm::cli {

struct RunConfig {
    // model
    std::string reservoir = "ohmic";  // ohmic|subohmic|superohmic|custom
    double s = 1.0;                   // used when reservoir = custom
    double g = 0.1;
    double kT = 100.0;
    std::string temperature_mode = "hight";  // hight|exact
    double r = 10.0;
    std::string mode = "nonmarkovian";  // nonmarkovian|markovian
    std::string regime = "res";         // off|res
    double alpha = 2.0;

    // coeffs grid (units 1/w0)
    double t_max = 5.0;
    int t_points = 201;

    // fringe grid (unitless Gamma' t = 2 g^2 w0 t)
    double gpt_max = 3.0;
    int gpt_points = 301;
    std::string reservoirs = "";  // comma list for multi-model fringe runs

    // zeno map grids
    double r_min = 0.1, r_max = 3.0;
    int r_points = 60;
    double wct_min = 0.05, wct_max = 10.0;
    int wct_points = 120;
    double boundary_tol = zeno::default_boundary_tol;
    double root_tol = zeno::default_root_tol;

    // quadrature
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double omega_max_factor = 60.0;
    int max_subdivisions = 2000;

    // certification dims (<= 120: desk scale)
    int cert_dim_off = 16;
    int cert_dim_res = 60;
    int cert_dim_fock = 32;

    std::string out = "out";
    int threads = 0;  // 0: hardware concurrency

    // -- derived accessors ------------------------------------------------
    ReservoirKind kind() const {
        if (reservoir == "ohmic") return ReservoirKind::Ohmic;
        if (reservoir == "subohmic") return ReservoirKind::SubOhmic;
        if (reservoir == "superohmic") return ReservoirKind::SuperOhmic;
        if (reservoir == "custom") return ReservoirKind::Custom;
        throw ConfigError("unknown reservoir '" + reservoir + "'");
    }
    double s_value() const { return ohmicity_exponent(kind(), s); }
    SpectralModel model() const {
        return SpectralModel(s_value(), g, r * 1.0);
    }
    ThermalBath bath() const {
        if (temperature_mode == "hight") return ThermalBath(kT, TemperatureMode::HighT);
        if (temperature_mode == "exact") return ThermalBath(kT, TemperatureMode::Exact);
        throw ConfigError("unknown temperature_mode '" + temperature_mode + "'");
    }
    kernels::CoefficientMode coefficient_mode() const {
        if (mode == "nonmarkovian") return kernels::CoefficientMode::NonMarkovian;
        if (mode == "markovian") return kernels::CoefficientMode::Markovian;
        throw ConfigError("unknown mode '" + mode + "'");
    }
    decoherence::Regime fringe_regime() const {
        if (regime == "off") return decoherence::Regime::OffResonant;
        if (regime == "res") return decoherence::Regime::Resonant;
        throw ConfigError("unknown regime '" + regime + "'");
    }
    QuadratureConfig quadrature() const {
        QuadratureConfig q{rel_tol, abs_tol, omega_max_factor, max_subdivisions};
        q.validate();
        return q;
    }
    std::vector<std::string> reservoir_list() const {
        std::vector<std::string> names;
        if (reservoirs.empty()) {
            names.push_back(reservoir);
            return names;
        }
        std::stringstream ss(reservoirs);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) names.push_back(tok);
        }
        if (names.empty()) throw ConfigError("reservoirs list is empty");
        return names;
    }

    void validate() const {
        (void)kind();
        (void)bath();
        (void)coefficient_mode();
        (void)fringe_regime();
        (void)quadrature();
        model().validate();
        if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
        if (t_points < 1 || gpt_points < 2 || r_points < 1 || wct_points < 1)
            throw ConfigError("grid point counts must be positive");
        if (!(t_max >= 0.0) || !(gpt_max > 0.0)) throw ConfigError("bad grid extent");
        if (!(r_min > 0.0) || !(r_max >= r_min)) throw ConfigError("bad r grid");
        if (!(wct_min > 0.0) || !(wct_max >= wct_min)) throw ConfigError("bad wct grid");
        if (cert_dim_off > 120 || cert_dim_res > 120 || cert_dim_fock > 120)
            throw ConfigError("certification dims must stay desk-scale (<= 120)");
        if (threads < 0) throw ConfigError("threads must be >= 0");
        for (const auto& name : reservoir_list())
            if (name != "ohmic" && name != "subohmic" && name != "superohmic" &&
                name != "custom")
                throw ConfigError("unknown reservoir '" + name + "' in list");
    }

    // echoed verbatim into every output-file header, fixed order
    std::vector<std::pair<std::string, std::string>> echo() const;

    void set(const std::string& key, const std::string& value);
};

namespace detail {
inline double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + v + "'");
    }
}
inline int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
    }
}
}  // namespace detail

inline void RunConfig::set(const std::string& key, const std::string& value) {
    using detail::to_double;
    using detail::to_int;
    if (key == "reservoir") reservoir = value;
    else if (key == "s") s = to_double(key, value);
    else if (key == "g") g = to_double(key, value);
    else if (key == "kT") kT = to_double(key, value);
    else if (key == "temperature_mode") temperature_mode = value;
    else if (key == "r") r = to_double(key, value);
    else if (key == "mode") mode = value;
    else if (key == "regime") regime = value;
    else if (key == "alpha") alpha = to_double(key, value);
    else if (key == "t_max") t_max = to_double(key, value);
    else if (key == "t_points") t_points = to_int(key, value);
    else if (key == "gpt_max") gpt_max = to_double(key, value);
    else if (key == "gpt_points") gpt_points = to_int(key, value);
    else if (key == "reservoirs") reservoirs = value;
    else if (key == "r_min") r_min = to_double(key, value);
    else if (key == "r_max") r_max = to_double(key, value);
    else if (key == "r_points") r_points = to_int(key, value);
    else if (key == "wct_min") wct_min = to_double(key, value);
    else if (key == "wct_max") wct_max = to_double(key, value);
    else if (key == "wct_points") wct_points = to_int(key, value);
    else if (key == "boundary_tol") boundary_tol = to_double(key, value);
    else if (key == "root_tol") root_tol = to_double(key, value);
    else if (key == "rel_tol") rel_tol = to_double(key, value);
    else if (key == "abs_tol") abs_tol = to_double(key, value);
    else if (key == "omega_max_factor") omega_max_factor = to_double(key, value);
    else if (key == "max_subdivisions") max_subdivisions = to_int(key, value);
    else if (key == "cert_dim_off") cert_dim_off = to_int(key, value);
    else if (key == "cert_dim_res") cert_dim_res = to_int(key, value);
    else if (key == "cert_dim_fock") cert_dim_fock = to_int(key, value);
    else if (key == "out") out = value;
    else if (key == "threads") threads = to_int(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

inline std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("reservoir", reservoir);
    kv.emplace_back("s", format_number(s_value()));
    kv.emplace_back("g", format_number(g));
    kv.emplace_back("kT", format_number(kT));
    kv.emplace_back("temperature_mode", temperature_mode);
    kv.emplace_back("r", format_number(r));
    kv.emplace_back("mode", mode);
    kv.emplace_back("regime", regime);
    kv.emplace_back("alpha", format_number(alpha));
    kv.emplace_back("t_max", format_number(t_max));
    kv.emplace_back("t_points", format_number(t_points));
    kv.emplace_back("gpt_max", format_number(gpt_max));
    kv.emplace_back("gpt_points", format_number(gpt_points));
    kv.emplace_back("reservoirs", reservoirs);
    kv.emplace_back("r_min", format_number(r_min));
    kv.emplace_back("r_max", format_number(r_max));
    kv.emplace_back("r_points", format_number(r_points));
    kv.emplace_back("wct_min", format_number(wct_min));
    kv.emplace_back("wct_max", format_number(wct_max));
    kv.emplace_back("wct_points", format_number(wct_points));
    kv.emplace_back("boundary_tol", format_number(boundary_tol));
    kv.emplace_back("root_tol", format_number(root_tol));
    kv.emplace_back("rel_tol", format_number(rel_tol));
    kv.emplace_back("abs_tol", format_number(abs_tol));
    kv.emplace_back("omega_max_factor", format_number(omega_max_factor));
    kv.emplace_back("max_subdivisions", format_number(max_subdivisions));
    kv.emplace_back("cert_dim_off", format_number(cert_dim_off));
    kv.emplace_back("cert_dim_res", format_number(cert_dim_res));
    kv.emplace_back("cert_dim_fock", format_number(cert_dim_fock));
    kv.emplace_back("out", out);
    kv.emplace_back("threads", format_number(threads));
    return kv;
}

inline RunConfig parse_config_text(std::istream& in, RunConfig base = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto ltrim = line.find_first_not_of(" \t\r");
        if (ltrim == std::string::npos) continue;
        auto rtrim = line.find_last_not_of(" \t\r");
        line = line.substr(ltrim, rtrim - ltrim + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        auto strip = [](std::string t) {
            const auto a = t.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const auto b = t.find_last_not_of(" \t");
            return t.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        base.set(key, value);
    }
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_text(in, std::move(base));
}

}  // namespace qbm::cli
