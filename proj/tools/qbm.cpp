// qbm — decoherence-control toolkit for the damped quantum oscillator
//
// Subcommands: coeffs, fringe, zeno, certify.
// Exit codes: 0 clean, 1 config/usage error, 2 partial numeric failure,
// 3 certification failure.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qbm/cli_commands.hpp"
#include "qbm/run_config.hpp"
#include "qbm/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out;
    int threads = -1;
    std::string mode;
    std::string regime;
};

void add_common(CLI::App* sub, CommonFlags& fl) {
    sub->add_option("--config", fl.config_path, "key=value config file");
    sub->add_option("--out", fl.out, "output directory");
    sub->add_option("--threads", fl.threads, "worker-thread bound for sweeps");
    sub->add_option("--mode", fl.mode, "coefficient mode: nonmarkovian|markovian")
        ->check(CLI::IsMember({"nonmarkovian", "markovian"}));
    sub->add_option("--regime", fl.regime, "fringe regime: off|res")
        ->check(CLI::IsMember({"off", "res"}));
}

qbm::cli::RunConfig resolve(const CommonFlags& fl) {
    qbm::cli::RunConfig cfg;
    if (!fl.config_path.empty()) cfg = qbm::cli::load_config(fl.config_path, cfg);
    if (!fl.out.empty()) cfg.out = fl.out;
    if (fl.threads >= 0) cfg.threads = fl.threads;
    if (!fl.mode.empty()) cfg.mode = fl.mode;
    if (!fl.regime.empty()) cfg.regime = fl.regime;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoherence control in Ohmic-family environments"};
    app.set_version_flag("--version", std::string("qbm ") + qbm::version);
    app.require_subcommand(1);

    CommonFlags fl_coeffs, fl_fringe, fl_zeno, fl_certify;
    auto* c1 = app.add_subcommand("coeffs", "time-dependent coefficient trace -> coeffs.csv");
    add_common(c1, fl_coeffs);
    auto* c2 = app.add_subcommand("fringe", "cat-state fringe visibility -> fringe.csv/.gp");
    add_common(c2, fl_fringe);
    auto* c3 = app.add_subcommand("zeno", "QZE/AZE crossover map -> zeno_map.csv/.gp");
    add_common(c3, fl_zeno);
    auto* c4 = app.add_subcommand("certify", "oracle certification -> certify_report.json");
    add_common(c4, fl_certify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c1->parsed()) return qbm::cli::cmd_coeffs(resolve(fl_coeffs));
        if (c2->parsed()) return qbm::cli::cmd_fringe(resolve(fl_fringe));
        if (c3->parsed()) return qbm::cli::cmd_zeno(resolve(fl_zeno));
        if (c4->parsed()) return qbm::cli::cmd_certify(resolve(fl_certify));
    } catch (const qbm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
