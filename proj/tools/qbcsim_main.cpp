// Command-line front end: seeded Monte Carlo batches, parameter sweeps, the
// hiding (distinguishability) test, and the five-session interference demo.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbc/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_path;
    std::string format = "json";
    std::string transcripts_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path,
                    "JSON config file mirroring the simulation parameters");
    cmd->add_option("--seed", opts.seed, "Master seed (64-bit)");
    cmd->add_option("--trials", opts.trials, "Number of sessions to run");
    cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--transcripts", opts.transcripts_dir,
                    "Directory for per-session transcript dumps (ldjson)");
}

qbc::SimConfig load_config(const CommonOpts& opts) {
    nlohmann::json j = nlohmann::json::object();
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) {
            throw std::invalid_argument("cannot open config file: " +
                                        opts.config_path);
        }
        in >> j;
    }
    qbc::SimConfig config = qbc::config_from_json(j);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.trials) config.trials = *opts.trials;
    config.validate();
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::invalid_argument("cannot open output file: " + out_path);
        }
        out << text;
    }
}

void dump_transcripts(const qbc::SimConfig& config, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        const qbc::SessionResult session = qbc::run_session(config, i);
        std::ofstream out(fs::path(dir) /
                          ("session_" + std::to_string(i) + ".ldjson"));
        out << session.transcript.to_ldjson();
    }
}

std::string stats_to_csv(const qbc::AggregateStats& stats) {
    std::ostringstream csv;
    csv << "matching_qber,qber_ci_lo,qber_ci_hi,out_of_basis_agreement,"
           "realized_p2,accept_fraction,n_announced\n";
    csv << stats.matching_qber << ',' << stats.qber_ci_lo << ','
        << stats.qber_ci_hi << ',' << stats.out_of_basis_agreement << ','
        << stats.realized_p2 << ',' << stats.accept_fraction << ','
        << stats.n_announced << '\n';
    return csv.str();
}

std::vector<double> parse_values_csv(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        values.push_back(std::stod(token));
    }
    if (values.empty()) {
        throw std::invalid_argument("--values: no numeric values given");
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for a faint-pulse quantum bit-commitment protocol"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "Run one Monte Carlo batch");
    add_common(run_cmd, run_opts);

    CommonOpts sweep_opts;
    std::string sweep_param;
    std::string sweep_values;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Monte Carlo batch per parameter value");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--param", sweep_param,
                          "Config field to sweep, e.g. channel.visibility_v")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")
        ->required();

    CommonOpts hiding_opts;
    std::uint64_t hiding_sessions = 100;
    CLI::App* hiding_cmd = app.add_subcommand(
        "hiding-test",
        "Chi-square distinguishability test of announced-count distributions");
    add_common(hiding_cmd, hiding_opts);
    hiding_cmd->add_option("--sessions", hiding_sessions,
                           "Honest sessions per commitment bit");

    CommonOpts fig2_opts;
    CLI::App* fig2_cmd = app.add_subcommand(
        "fig2",
        "Five ~200-pulse sessions at visibility 0.9; per-session success rates");
    add_common(fig2_cmd, fig2_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run_cmd) {
            const qbc::SimConfig config = load_config(run_opts);
            const qbc::AggregateStats stats = qbc::run_monte_carlo(config);
            if (!run_opts.transcripts_dir.empty()) {
                dump_transcripts(config, run_opts.transcripts_dir);
            }
            emit(run_opts.format == "csv" ? stats_to_csv(stats)
                                          : stats.to_json().dump(2) + "\n",
                 run_opts.out_path);
        } else if (*sweep_cmd) {
            const qbc::SimConfig config = load_config(sweep_opts);
            const auto points =
                qbc::sweep(config, sweep_param, parse_values_csv(sweep_values));
            if (sweep_opts.format == "csv") {
                emit(qbc::sweep_to_csv(points), sweep_opts.out_path);
            } else {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& p : points) {
                    j.push_back({{"param_value", p.param_value},
                                 {"stats", p.stats.to_json()}});
                }
                emit(j.dump(2) + "\n", sweep_opts.out_path);
            }
        } else if (*hiding_cmd) {
            const qbc::SimConfig config = load_config(hiding_opts);
            const qbc::HidingTestResult res =
                qbc::hiding_test(config, hiding_sessions);
            if (hiding_opts.format == "csv") {
                std::ostringstream csv;
                csv << "chi_square,p_value,dof,sessions_per_bit\n"
                    << res.chi_square << ',' << res.p_value << ',' << res.dof
                    << ',' << res.sessions_per_bit << '\n';
                emit(csv.str(), hiding_opts.out_path);
            } else {
                emit(res.to_json().dump(2) + "\n", hiding_opts.out_path);
            }
        } else if (*fig2_cmd) {
            const std::uint64_t seed = fig2_opts.seed.value_or(20);
            const auto sessions = qbc::run_fig2(seed);
            if (fig2_opts.format == "csv") {
                std::ostringstream csv;
                csv << "session,in_basis_success,out_of_basis_success,"
                       "n_in_basis,n_out_of_basis,n_announced\n";
                for (std::size_t i = 0; i < sessions.size(); ++i) {
                    const auto& s = sessions[i];
                    csv << i << ',' << s.in_basis_success << ','
                        << s.out_of_basis_success << ',' << s.n_in_basis << ','
                        << s.n_out_of_basis << ',' << s.n_announced << '\n';
                }
                emit(csv.str(), fig2_opts.out_path);
            } else {
                nlohmann::json j = nlohmann::json::array();
                for (std::size_t i = 0; i < sessions.size(); ++i) {
                    const auto& s = sessions[i];
                    j.push_back({{"session", i},
                                 {"in_basis_success", s.in_basis_success},
                                 {"out_of_basis_success", s.out_of_basis_success},
                                 {"n_in_basis", s.n_in_basis},
                                 {"n_out_of_basis", s.n_out_of_basis},
                                 {"n_announced", s.n_announced}});
                }
                emit(j.dump(2) + "\n", fig2_opts.out_path);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
