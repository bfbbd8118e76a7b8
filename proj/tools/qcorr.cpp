// Command-line driver: correlation time series, discord sweeps, validation
// suites and spectral tables, all emitted as deterministic CSV or JSON.
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcorr/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidationFailure = 2;

struct Cli {
    qcorr::RunConfig config;
    std::string pairs_spec = "qubits,cavities,reservoirs";
    std::string format_spec = "csv";
    std::string config_path;
};

// Seeds the option defaults from a flat key=value file; flags parsed
// afterwards override these values.
void apply_config_file(Cli& cli, const std::string& path) {
    for (const auto& [key, value] : qcorr::load_flat_config(path)) {
        if (key == "g-over-gamma")
            cli.config.g_over_gamma = std::stod(value);
        else if (key == "alpha")
            cli.config.alpha = std::stod(value);
        else if (key == "beta-phase")
            cli.config.beta_phase = std::stod(value);
        else if (key == "t-max")
            cli.config.t_max = std::stod(value);
        else if (key == "steps")
            cli.config.n_steps = std::stoi(value);
        else if (key == "pairs")
            cli.pairs_spec = value;
        else if (key == "seed")
            cli.config.seed = std::stoull(value);
        else if (key == "out")
            cli.config.output_path = value;
        else if (key == "format")
            cli.format_spec = value;
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
}

// The config path must be known before the full parse so that file values
// can act as defaults underneath the explicit flags.
std::string prescan_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void add_common_options(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--g-over-gamma", cli.config.g_over_gamma,
                    "Qubit-cavity coupling in units of the cavity loss rate")
        ->capture_default_str();
    cmd->add_option("--alpha", cli.config.alpha,
                    "Amplitude of the |00> component of the initial state, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--beta-phase", cli.config.beta_phase,
                    "Phase of the |11> amplitude in radians (all outputs are invariant)")
        ->capture_default_str();
    cmd->add_option("--t-max", cli.config.t_max, "Largest dimensionless time gamma*t")
        ->capture_default_str();
    cmd->add_option("--steps", cli.config.n_steps, "Grid size / sample count")
        ->capture_default_str();
    cmd->add_option("--pairs", cli.pairs_spec,
                    "Comma-separated subset of qubits,cavities,reservoirs")
        ->capture_default_str();
    cmd->add_option("--seed", cli.config.seed, "Seed for the random-state validation suite")
        ->capture_default_str();
    cmd->add_option("--out", cli.config.output_path, "Output file (stdout when omitted)");
    cmd->add_option("--format", cli.format_spec, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--config", cli.config_path,
                    "Flat key=value config file; command-line flags win");
}

void finalize(Cli& cli) {
    cli.config.pairs = qcorr::parse_pairs(cli.pairs_spec);
    cli.config.format =
        cli.format_spec == "json" ? qcorr::OutputFormat::Json : qcorr::OutputFormat::Csv;
    cli.config.validate();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Quantum correlation flow in two qubit-cavity-reservoir chains:\n"
        "closed-form dynamics, discord/concurrence transfer and extraction."};
    app.require_subcommand(1);

    Cli ts_cli, sweep_cli, oracle_cli, ode_cli, extract_cli, spectral_cli;
    sweep_cli.config.t_max = 0.6;
    sweep_cli.config.n_steps = 40;
    oracle_cli.config.n_steps = 1000;
    ode_cli.config.n_steps = 50;
    spectral_cli.config.n_steps = 501;

    CLI::App* ts = app.add_subcommand(
        "timeseries", "Concurrence, discord, classical and total correlations over time");
    add_common_options(ts, ts_cli);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Two-cavity discord at fixed gamma*t over a (g/gamma, alpha) grid");
    add_common_options(sweep, sweep_cli);

    CLI::App* oracle = app.add_subcommand(
        "oracle-validate",
        "Closed-form discord against the projective-measurement search (--steps states)");
    add_common_options(oracle, oracle_cli);

    CLI::App* ode = app.add_subcommand(
        "validate-ode", "Master-equation integration against the closed-form amplitudes");
    add_common_options(ode, ode_cli);

    CLI::App* extract = app.add_subcommand(
        "extract", "Output photon flux and cumulative emission per subsystem");
    add_common_options(extract, extract_cli);

    CLI::App* spectral = app.add_subcommand(
        "spectral", "Level shift, detuning and dressed-mode weight on a frequency grid");
    add_common_options(spectral, spectral_cli);

    const std::string config_path = prescan_config_path(argc, argv);
    if (!config_path.empty()) {
        try {
            for (Cli* cli :
                 {&ts_cli, &sweep_cli, &oracle_cli, &ode_cli, &extract_cli, &spectral_cli})
                apply_config_file(*cli, config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(ts)) {
            finalize(ts_cli);
            qcorr::write_output(ts_cli.config,
                                render_timeseries(run_timeseries(ts_cli.config),
                                                  ts_cli.config.format));
            return kExitOk;
        }
        if (app.got_subcommand(sweep)) {
            finalize(sweep_cli);
            qcorr::write_output(sweep_cli.config,
                                render_sweep(run_sweep(sweep_cli.config), sweep_cli.config.format));
            return kExitOk;
        }
        if (app.got_subcommand(oracle)) {
            finalize(oracle_cli);
            const auto report = qcorr::run_oracle_validate(oracle_cli.config,
                                                           oracle_cli.config.n_steps);
            qcorr::write_output(oracle_cli.config,
                                render_oracle(report, oracle_cli.config.format));
            std::cerr << "oracle-validate: max |analytic - brute force| = "
                      << qcorr::fmt12(report.max_gap) << " over " << report.rows.size()
                      << " states\n";
            return report.passed() ? kExitOk : kExitValidationFailure;
        }
        if (app.got_subcommand(ode)) {
            finalize(ode_cli);
            const auto report = qcorr::run_validate_ode(ode_cli.config, ode_cli.config.n_steps);
            qcorr::write_output(ode_cli.config, render_ode(report, ode_cli.config.format));
            std::cerr << "validate-ode: max deviation = " << qcorr::fmt12(report.max_deviation)
                      << "\n";
            return report.max_deviation < 1e-6 ? kExitOk : kExitValidationFailure;
        }
        if (app.got_subcommand(extract)) {
            finalize(extract_cli);
            qcorr::write_output(extract_cli.config,
                                render_extract(run_extract(extract_cli.config),
                                               extract_cli.config.format));
            return kExitOk;
        }
        if (app.got_subcommand(spectral)) {
            finalize(spectral_cli);
            qcorr::write_output(spectral_cli.config,
                                render_spectral(run_spectral(spectral_cli.config),
                                                spectral_cli.config.format));
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
