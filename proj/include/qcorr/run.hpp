// Orchestration for the command-line tool: run configurations, the six
// subcommand implementations and deterministic CSV/JSON serialization.
#pragma once

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcorr/discord_oracle.hpp"
#include "qcorr/extraction.hpp"
#include "qcorr/fano.hpp"
#include "qcorr/lindblad.hpp"
#include "qcorr/model.hpp"
#include "qcorr/xstate.hpp"

namespace qcorr {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    double g_over_gamma = 3.0;
    double alpha = 0.5773502691896258;  // 1/sqrt(3)
    double beta_phase = 0.0;
    double t_max = 3.0;
    int n_steps = 301;
    std::vector<Pair> pairs{Pair::Qubits, Pair::Cavities, Pair::Reservoirs};
    std::uint64_t seed = 12345;
    std::string output_path;  // empty writes to stdout
    OutputFormat format = OutputFormat::Csv;

    // n_steps requirements differ per command (grids need >= 2, the oracle
    // suite accepts 0), so they are checked by the run_* functions.
    void validate() const {
        if (!(t_max > 0.0)) throw std::invalid_argument("t-max must be > 0");
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
        if (!(g_over_gamma >= 0.0)) throw std::invalid_argument("g-over-gamma must be >= 0");
        if (pairs.empty()) throw std::invalid_argument("at least one pair required");
    }

    SystemParams params() const {
        return SystemParams::from_ratio(g_over_gamma, alpha, beta_phase);
    }
};

// Flat key = value configuration text: one entry per line, '#' comments.
// Keys are the long flag names without the leading dashes; underscores and
// dashes are interchangeable.
inline std::vector<std::pair<std::string, std::string>> load_flat_config(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " + line);
        std::string key = trim(line.substr(0, eq));
        for (auto& ch : key)
            if (ch == '_') ch = '-';
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return entries;
}

inline std::vector<Pair> parse_pairs(const std::string& spec) {
    std::vector<Pair> out;
    std::stringstream ss(spec);
    std::string item;
    auto has = [&](Pair p) {
        for (Pair q : out)
            if (q == p) return true;
        return false;
    };
    while (std::getline(ss, item, ',')) {
        Pair p;
        if (item == "qubits")
            p = Pair::Qubits;
        else if (item == "cavities")
            p = Pair::Cavities;
        else if (item == "reservoirs")
            p = Pair::Reservoirs;
        else
            throw std::invalid_argument("unknown pair: " + item);
        if (!has(p)) out.push_back(p);
    }
    // canonical order regardless of how the subset was written
    std::vector<Pair> ordered;
    for (Pair p : {Pair::Qubits, Pair::Cavities, Pair::Reservoirs})
        if (has(p)) ordered.push_back(p);
    return ordered;
}

// Fixed 12-significant-digit formatting shared by both output formats.
inline std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    if (std::strcmp(buf, "-0") == 0) return "0";
    return buf;
}

namespace detail {

inline nlohmann::ordered_json json_number(double x) {
    return nlohmann::ordered_json::parse(fmt12(x));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// timeseries

inline std::vector<CorrelationRecord> run_timeseries(const RunConfig& config) {
    config.validate();
    if (config.n_steps < 2) throw std::invalid_argument("steps must be >= 2");
    const SystemParams params = config.params();
    std::vector<CorrelationRecord> rows;
    rows.reserve(static_cast<std::size_t>(config.n_steps) * config.pairs.size());
    for (int i = 0; i < config.n_steps; ++i) {
        const double t = config.t_max * static_cast<double>(i) / (config.n_steps - 1);
        for (Pair pair : config.pairs) rows.push_back(correlation_record(t, pair, params));
    }
    return rows;
}

inline std::string render_timeseries(const std::vector<CorrelationRecord>& rows,
                                     OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "t,pair,concurrence,discord,classical,mutual\n";
        for (const auto& r : rows) {
            out += fmt12(r.t);
            out += ',';
            out += pair_name(r.pair);
            out += ',';
            out += fmt12(r.concurrence);
            out += ',';
            out += fmt12(r.discord);
            out += ',';
            out += fmt12(r.classical);
            out += ',';
            out += fmt12(r.mutual);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["t"] = detail::json_number(r.t);
        row["pair"] = pair_name(r.pair);
        row["concurrence"] = detail::json_number(r.concurrence);
        row["discord"] = detail::json_number(r.discord);
        row["classical"] = detail::json_number(r.classical);
        row["mutual"] = detail::json_number(r.mutual);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// sweep of the two-cavity discord over coupling ratio and alpha

struct SweepCell {
    double g_over_gamma = 0.0;
    double alpha = 0.0;
    double discord_cavities = 0.0;
};

inline std::vector<SweepCell> run_sweep(double g_lo, double g_hi, int g_steps, double alpha_lo,
                                        double alpha_hi, int alpha_steps, double t_fixed,
                                        double beta_phase = 0.0) {
    if (g_steps < 2 || alpha_steps < 2) throw std::invalid_argument("steps must be >= 2");
    if (!(t_fixed > 0.0)) throw std::invalid_argument("t-max must be > 0");
    std::vector<SweepCell> cells;
    cells.reserve(static_cast<std::size_t>(g_steps) * alpha_steps);
    for (int i = 0; i < g_steps; ++i) {
        const double g = g_lo + (g_hi - g_lo) * static_cast<double>(i) / (g_steps - 1);
        for (int j = 0; j < alpha_steps; ++j) {
            const double alpha =
                alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(j) / (alpha_steps - 1);
            const SystemParams params = SystemParams::from_ratio(g, alpha, beta_phase);
            const XState x = pair_state(Pair::Cavities, params,
                                        single_excitation_amplitudes(params, t_fixed));
            cells.push_back(SweepCell{g, alpha, discord(x)});
        }
    }
    return cells;
}

inline std::vector<SweepCell> run_sweep(const RunConfig& config) {
    config.validate();
    return run_sweep(0.5, 10.0, config.n_steps, 0.0, 1.0, config.n_steps, config.t_max,
                     config.beta_phase);
}

inline std::string render_sweep(const std::vector<SweepCell>& cells, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "g_over_gamma,alpha,discord_c1c2\n";
        for (const auto& c : cells) {
            out += fmt12(c.g_over_gamma);
            out += ',';
            out += fmt12(c.alpha);
            out += ',';
            out += fmt12(c.discord_cavities);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json row;
        row["g_over_gamma"] = detail::json_number(c.g_over_gamma);
        row["alpha"] = detail::json_number(c.alpha);
        row["discord_c1c2"] = detail::json_number(c.discord_cavities);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// oracle validation: closed-form discord against the measurement search

struct OracleRow {
    std::string label;
    double discord_analytic = 0.0;
    double discord_brute = 0.0;
};

struct OracleReport {
    std::vector<OracleRow> rows;
    double max_gap = 0.0;
    bool passed(double tol = 1e-4) const { return max_gap <= tol; }
};

inline OracleReport run_oracle_validate(const RunConfig& config, int n_states) {
    config.validate();
    if (n_states < 0) throw std::invalid_argument("state count must be >= 0");
    OracleReport report;
    if (n_states == 0) return report;  // nothing requested, trivially passes
    DetRng rng(config.seed);
    char label[64];

    for (int i = 0; i < n_states; ++i) {
        const XState x = random_symmetric_xstate(rng);
        std::snprintf(label, sizeof label, "random-%04d", i);
        const double analytic = discord(x);
        const double brute = discord_brute_force(to_matrix(x));
        report.rows.push_back(OracleRow{label, analytic, brute});
    }

    // the pair states of the default trajectory at 20 sampled times
    const SystemParams params = config.params();
    for (int k = 0; k < 20; ++k) {
        const double t = config.t_max * static_cast<double>(k) / 19.0;
        const AmplitudeTriple amp = single_excitation_amplitudes(params, t);
        for (Pair pair : config.pairs) {
            const XState x = pair_state(pair, params, amp);
            std::snprintf(label, sizeof label, "%s-t%.6f", pair_name(pair), t);
            const double analytic = discord(x);
            const double brute = discord_brute_force(to_matrix(x));
            report.rows.push_back(OracleRow{label, analytic, brute});
        }
    }

    for (const auto& r : report.rows)
        report.max_gap = std::max(report.max_gap, std::abs(r.discord_analytic - r.discord_brute));
    return report;
}

inline std::string render_oracle(const OracleReport& report, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "case,discord_analytic,discord_bruteforce,abs_gap\n";
        for (const auto& r : report.rows) {
            out += r.label;
            out += ',';
            out += fmt12(r.discord_analytic);
            out += ',';
            out += fmt12(r.discord_brute);
            out += ',';
            out += fmt12(std::abs(r.discord_analytic - r.discord_brute));
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["case"] = r.label;
        row["discord_analytic"] = detail::json_number(r.discord_analytic);
        row["discord_bruteforce"] = detail::json_number(r.discord_brute);
        row["abs_gap"] = detail::json_number(std::abs(r.discord_analytic - r.discord_brute));
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// master-equation validation against the closed-form amplitudes

struct OdeRow {
    double t = 0.0;
    double dev_qubit_pop = 0.0;
    double dev_cavity_pop = 0.0;
    double dev_ground_pop = 0.0;
    double dev_coherence = 0.0;
};

struct OdeReport {
    std::vector<OdeRow> rows;
    double max_deviation = 0.0;
};

inline OdeReport run_validate_ode(const RunConfig& config, int n_samples = 50,
                                  double dt_override = 0.0) {
    config.validate();
    if (n_samples < 1) throw std::invalid_argument("need at least one sample time");
    const SystemParams params = config.params();
    const double dt =
        dt_override > 0.0 ? dt_override : 1e-3 / std::max(params.g, params.gamma);

    OdeReport report;
    QubitCavityState state = QubitCavityState::excited_qubit_vacuum(1);
    double t_prev = 0.0;
    for (int k = 1; k <= n_samples; ++k) {
        const double t = config.t_max * static_cast<double>(k) / n_samples;
        state = evolve(state, params, t - t_prev, dt);
        t_prev = t;

        const AmplitudeTriple amp = single_excitation_amplitudes(params, t);
        const auto& m = state.matrix;
        OdeRow row;
        row.t = t;
        row.dev_qubit_pop = std::abs(m(2, 2).real() - std::norm(amp.qubit));
        row.dev_cavity_pop = std::abs(m(1, 1).real() - std::norm(amp.cavity));
        row.dev_ground_pop = std::abs(m(0, 0).real() - std::norm(amp.reservoir));
        row.dev_coherence = std::abs(m(2, 1) - amp.qubit * std::conj(amp.cavity));
        report.rows.push_back(row);
    }
    for (const auto& r : report.rows)
        report.max_deviation = std::max({report.max_deviation, r.dev_qubit_pop, r.dev_cavity_pop,
                                         r.dev_ground_pop, r.dev_coherence});
    return report;
}

inline std::string render_ode(const OdeReport& report, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "t,dev_qubit_pop,dev_cavity_pop,dev_ground_pop,dev_coherence\n";
        for (const auto& r : report.rows) {
            out += fmt12(r.t);
            out += ',';
            out += fmt12(r.dev_qubit_pop);
            out += ',';
            out += fmt12(r.dev_cavity_pop);
            out += ',';
            out += fmt12(r.dev_ground_pop);
            out += ',';
            out += fmt12(r.dev_coherence);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["t"] = detail::json_number(r.t);
        row["dev_qubit_pop"] = detail::json_number(r.dev_qubit_pop);
        row["dev_cavity_pop"] = detail::json_number(r.dev_cavity_pop);
        row["dev_ground_pop"] = detail::json_number(r.dev_ground_pop);
        row["dev_coherence"] = detail::json_number(r.dev_coherence);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// extraction table

inline std::vector<OutputRecord> run_extract(const RunConfig& config) {
    config.validate();
    if (config.n_steps < 2) throw std::invalid_argument("steps must be >= 2");
    const SystemParams params = config.params();
    std::vector<OutputRecord> rows;
    rows.reserve(config.n_steps);
    double cumulative = 0.0;
    double t_prev = 0.0;
    for (int i = 0; i < config.n_steps; ++i) {
        const double t = config.t_max * static_cast<double>(i) / (config.n_steps - 1);
        if (i > 0)
            cumulative += simpson([&](double s) { return output_flux(params, s); }, t_prev, t, 64);
        t_prev = t;
        if (cumulative > 1.0 + 1e-8)
            throw std::logic_error("cumulative emission exceeded one photon");
        rows.push_back(OutputRecord{t, output_flux(params, t), std::min(cumulative, 1.0)});
    }
    return rows;
}

inline std::string render_extract(const std::vector<OutputRecord>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "t,flux,cumulative\n";
        for (const auto& r : rows) {
            out += fmt12(r.t);
            out += ',';
            out += fmt12(r.flux);
            out += ',';
            out += fmt12(r.cumulative);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["t"] = detail::json_number(r.t);
        row["flux"] = detail::json_number(r.flux);
        row["cumulative"] = detail::json_number(r.cumulative);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// spectral functions on a frequency grid (flat coupling, resonant cavity)

inline SpectralGrid run_spectral(const RunConfig& config, double grid_half_width = 25.0,
                                 double band_half_width = 1e8) {
    config.validate();
    if (config.n_steps < 2) throw std::invalid_argument("steps must be >= 2");
    const double kappa = continuum_coupling(1.0);  // gamma = 1 in CLI units
    std::vector<double> omegas;
    omegas.reserve(config.n_steps);
    for (int i = 0; i < config.n_steps; ++i)
        omegas.push_back(-grid_half_width +
                         2.0 * grid_half_width * static_cast<double>(i) / (config.n_steps - 1));
    return sample_spectrum([kappa](double) { return kappa; }, 0.0,
                           Band{-band_half_width, band_half_width}, omegas, 1e-10);
}

inline std::string render_spectral(const SpectralGrid& grid, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "omega,kappa,F,z,alpha_sq\n";
        for (std::size_t i = 0; i < grid.omega.size(); ++i) {
            out += fmt12(grid.omega[i]);
            out += ',';
            out += fmt12(grid.kappa[i]);
            out += ',';
            out += fmt12(grid.shift[i]);
            out += ',';
            out += fmt12(grid.z[i]);
            out += ',';
            out += fmt12(grid.weight[i]);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < grid.omega.size(); ++i) {
        nlohmann::ordered_json row;
        row["omega"] = detail::json_number(grid.omega[i]);
        row["kappa"] = detail::json_number(grid.kappa[i]);
        row["F"] = detail::json_number(grid.shift[i]);
        row["z"] = detail::json_number(grid.z[i]);
        row["alpha_sq"] = detail::json_number(grid.weight[i]);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

// Writes rendered output to the configured destination (file or stdout).
inline void write_output(const RunConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + config.output_path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output: " + config.output_path);
}

}  // namespace qcorr
