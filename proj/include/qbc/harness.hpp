#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbc/adversary.hpp"
#include "qbc/stats.hpp"
#include "qbc/transcript.hpp"

namespace qbc {

enum class ProtocolMode { Primary, Legacy };

std::string to_string(ProtocolMode mode);
ProtocolMode protocol_mode_from_string(const std::string& s);

struct SimConfig {
    SourceModel source;
    ChannelModel channel;
    AdversaryConfig adversary;
    Thresholds thresholds;
    ProtocolMode protocol_mode = ProtocolMode::Primary;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1;
    // Commitment bit: 0 or 1 fixed, -1 for a per-session coin.
    int commit_bit = -1;

    void validate() const;
};

// JSON round-trip with lower_snake_case keys; missing keys take defaults.
SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& c);

struct SessionResult {
    Transcript transcript;
    VerificationReport report;
    std::uint64_t n_pair_provenance = 0;
    double realized_p2 = 0.0;
};

// One end-to-end session: prepare -> transmit -> commit -> open -> verify,
// driven by a random stream derived from (seed, session_index).
SessionResult run_session(const SimConfig& config, std::uint64_t session_index);

struct AggregateStats {
    std::uint64_t trials = 0;
    std::uint64_t n_accepted = 0;
    std::uint64_t n_sent = 0;
    std::uint64_t n_announced = 0;
    std::uint64_t n_matching_basis = 0;
    std::uint64_t n_matching_errors = 0;
    std::uint64_t n_out_of_basis = 0;
    std::uint64_t n_out_of_basis_agree = 0;
    std::uint64_t n_pair_provenance = 0;
    // Pooled ratios: integer counts are merged across trials before any
    // division, so aggregation is order-independent.
    double matching_qber = 0.0;
    double qber_ci_lo = 0.0;
    double qber_ci_hi = 0.0;
    double out_of_basis_agreement = 0.0;
    double realized_p2 = 0.0;
    double accept_fraction = 0.0;
    double wall_seconds = 0.0;
    std::vector<VerificationReport> reports;

    nlohmann::json to_json(bool include_reports = false) const;
};

AggregateStats run_monte_carlo(const SimConfig& config);

struct HidingTestResult {
    double chi_square = 0.0;
    double p_value = 1.0;
    int dof = 0;
    int n_bins = 0;
    std::uint64_t sessions_per_bit = 0;
    std::string note;

    nlohmann::json to_json() const;
};

// Runs sessions_per_bit honest sessions per commitment bit and compares the
// announced-detection-count distributions with a two-sample chi-square test.
// Requires sessions_per_bit >= 30.
HidingTestResult hiding_test(const SimConfig& config,
                             std::uint64_t sessions_per_bit);

struct SweepPoint {
    double param_value = 0.0;
    AggregateStats stats;
};

// One Monte Carlo batch per value, patching the numeric config field named
// by `parameter_path` (dotted or JSON-pointer form, e.g.
// "channel.visibility_v" or "/adversary/forced_p2").
std::vector<SweepPoint> sweep(const SimConfig& config,
                              const std::string& parameter_path,
                              const std::vector<double>& values);

std::string sweep_to_csv(const std::vector<SweepPoint>& points);

struct Fig2Session {
    std::uint64_t n_in_basis = 0;
    std::uint64_t n_out_of_basis = 0;
    std::uint64_t n_announced = 0;
    double in_basis_success = 0.0;
    double out_of_basis_success = 0.0;
};

// Five honest sessions of ~200 expected pulses each at visibility 0.9;
// reports per-session success rates for qubits sent in vs. out of the
// commitment basis.
std::vector<Fig2Session> run_fig2(std::uint64_t seed);

}  // namespace qbc
