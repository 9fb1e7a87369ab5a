#include "qbc/harness.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qbc/random.hpp"

namespace qbc {

namespace {

// Stream tags keep the per-purpose sub-streams of one master seed apart.
constexpr std::uint64_t kTagSession = 0x5e5510aULL;
constexpr std::uint64_t kTagHiding = 0x41d1a6ULL;

nlohmann::json source_to_json(const SourceModel& s) {
    return {
        {"mean_photons_mu", s.mean_photons_mu},
        {"pulse_rate", s.pulse_rate},
        {"session_duration", s.session_duration},
        {"heralded", s.heralded},
    };
}

SourceModel source_from_json(const nlohmann::json& j) {
    SourceModel s;
    s.mean_photons_mu = j.value("mean_photons_mu", s.mean_photons_mu);
    s.pulse_rate = j.value("pulse_rate", s.pulse_rate);
    s.session_duration = j.value("session_duration", s.session_duration);
    s.heralded = j.value("heralded", s.heralded);
    return s;
}

nlohmann::json channel_to_json(const ChannelModel& c) {
    nlohmann::json j = {
        {"transmittance_eta", c.transmittance_eta},
        {"qubit_error_e", c.qubit_error_e},
        {"visibility_v", c.visibility_v},
        {"detector_efficiency", c.detector_efficiency},
        {"dark_count_prob", c.dark_count_prob},
    };
    if (c.detector_efficiency_lr.has_value()) {
        j["detector_efficiency_lr"] = *c.detector_efficiency_lr;
    }
    return j;
}

ChannelModel channel_from_json(const nlohmann::json& j) {
    ChannelModel c;
    c.transmittance_eta = j.value("transmittance_eta", c.transmittance_eta);
    c.qubit_error_e = j.value("qubit_error_e", c.qubit_error_e);
    c.visibility_v = j.value("visibility_v", c.visibility_v);
    c.detector_efficiency = j.value("detector_efficiency", c.detector_efficiency);
    c.dark_count_prob = j.value("dark_count_prob", c.dark_count_prob);
    if (j.contains("detector_efficiency_lr") &&
        !j.at("detector_efficiency_lr").is_null()) {
        c.detector_efficiency_lr = j.at("detector_efficiency_lr").get<double>();
    }
    return c;
}

nlohmann::json adversary_to_json(const AdversaryConfig& a) {
    return {
        {"strategy", to_string(a.strategy)},
        {"qnd_success_q", a.qnd_success_q},
        {"storage_fidelity_f", a.storage_fidelity_f},
        {"exploit_pairs", a.exploit_pairs},
        {"forced_p2", a.forced_p2},
    };
}

AdversaryConfig adversary_from_json(const nlohmann::json& j) {
    AdversaryConfig a;
    if (j.contains("strategy")) {
        a.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    }
    a.qnd_success_q = j.value("qnd_success_q", a.qnd_success_q);
    a.storage_fidelity_f = j.value("storage_fidelity_f", a.storage_fidelity_f);
    a.exploit_pairs = j.value("exploit_pairs", a.exploit_pairs);
    a.forced_p2 = j.value("forced_p2", a.forced_p2);
    return a;
}

nlohmann::json thresholds_to_json(const Thresholds& t) {
    return {
        {"qber_threshold", t.qber_threshold},
        {"rate_floor", t.rate_floor},
        {"rate_ceiling", t.rate_ceiling},
    };
}

Thresholds thresholds_from_json(const nlohmann::json& j) {
    Thresholds t;
    t.qber_threshold = j.value("qber_threshold", t.qber_threshold);
    t.rate_floor = j.value("rate_floor", t.rate_floor);
    t.rate_ceiling = j.value("rate_ceiling", t.rate_ceiling);
    return t;
}

}  // namespace

std::string to_string(ProtocolMode mode) {
    return mode == ProtocolMode::Primary ? "primary" : "legacy";
}

ProtocolMode protocol_mode_from_string(const std::string& s) {
    if (s == "primary") return ProtocolMode::Primary;
    if (s == "legacy") return ProtocolMode::Legacy;
    throw std::invalid_argument("protocol_mode must be 'primary' or 'legacy'");
}

void SimConfig::validate() const {
    source.validate();
    channel.validate();
    adversary.validate();
    thresholds.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (commit_bit < -1 || commit_bit > 1) {
        throw std::invalid_argument("commit_bit must be -1, 0, or 1");
    }
}

SimConfig config_from_json(const nlohmann::json& j) {
    SimConfig c;
    if (j.contains("source")) c.source = source_from_json(j.at("source"));
    if (j.contains("channel")) c.channel = channel_from_json(j.at("channel"));
    if (j.contains("adversary")) c.adversary = adversary_from_json(j.at("adversary"));
    if (j.contains("thresholds")) c.thresholds = thresholds_from_json(j.at("thresholds"));
    if (j.contains("protocol_mode")) {
        c.protocol_mode =
            protocol_mode_from_string(j.at("protocol_mode").get<std::string>());
    }
    c.seed = j.value("seed", c.seed);
    c.trials = j.value("trials", c.trials);
    c.commit_bit = j.value("commit_bit", c.commit_bit);
    c.validate();
    return c;
}

nlohmann::json config_to_json(const SimConfig& c) {
    return {
        {"source", source_to_json(c.source)},
        {"channel", channel_to_json(c.channel)},
        {"adversary", adversary_to_json(c.adversary)},
        {"thresholds", thresholds_to_json(c.thresholds)},
        {"protocol_mode", to_string(c.protocol_mode)},
        {"seed", c.seed},
        {"trials", c.trials},
        {"commit_bit", c.commit_bit},
    };
}

SessionResult run_session(const SimConfig& config, std::uint64_t session_index) {
    config.validate();
    RandomStream rng =
        RandomStream::derive(config.seed, {kTagSession, session_index});

    SessionResult result;
    result.transcript.session_id =
        std::to_string(config.seed) + "-" + std::to_string(session_index);

    const int bit =
        config.commit_bit >= 0 ? config.commit_bit : (rng.bernoulli(0.5) ? 1 : 0);

    Announcement ann;
    OpeningRecord open;
    std::uint64_t n_sent = 0;
    double session_duration = config.source.session_duration;

    if (config.protocol_mode == ProtocolMode::Legacy) {
        const bool bob_cheats = config.adversary.strategy != Strategy::Honest;
        LegacySessionResult legacy = run_legacy_session(
            config.source, config.channel, config.thresholds, bit, bob_cheats,
            config.adversary.qnd_success_q, config.adversary.storage_fidelity_f,
            rng);
        ann = std::move(legacy.announcement);
        open = std::move(legacy.opening);
        result.report = legacy.report;
        n_sent = legacy.report.n_sent;
    } else {
        const std::vector<PulseRecord> records =
            bob_prepare_session(config.source, rng);
        n_sent = records.size();
        const std::vector<PulsePhysicalOutcome> arrivals =
            propagate_session(records, config.source, config.channel, rng);
        const double expected = expected_click_rate(config.source, config.channel);

        if (config.adversary.strategy == Strategy::Honest) {
            auto [announcement, store] =
                alice_commit(bit, arrivals, config.channel, rng);
            ann = std::move(announcement);
            open = alice_open(store, bit);
        } else {
            AdversaryCommitResult cheat =
                adversary_commit(arrivals, config.adversary, config.source,
                                 config.channel, config.thresholds, n_sent, rng);
            ann = std::move(cheat.announcement);
            open = adversary_open(cheat.store, bit,
                                  config.adversary.storage_fidelity_f, rng);
            result.realized_p2 = cheat.realized_p2;
            for (const auto& [id, entry] : cheat.store.entries) {
                if (entry.provenance == Provenance::PairBothBases) {
                    ++result.n_pair_provenance;
                }
            }
        }
        result.report =
            bob_verify(records, ann, open, config.thresholds, expected);
    }

    const nlohmann::json config_json = config_to_json(config);
    result.transcript.append(
        "HEADER",
        {
            {"config_hash", fnv1a64(config_json.dump())},
            {"seed", config.seed},
            {"session_index", session_index},
            {"protocol_mode", to_string(config.protocol_mode)},
            {"pulse_count", n_sent},
            {"session_duration", session_duration},
        });
    result.transcript.append("ANNOUNCE", to_json(ann));
    result.transcript.append("OPEN", to_json(open));
    result.transcript.append("VERDICT", to_json(result.report));
    return result;
}

nlohmann::json AggregateStats::to_json(bool include_reports) const {
    nlohmann::json j = {
        {"trials", trials},
        {"n_accepted", n_accepted},
        {"n_sent", n_sent},
        {"n_announced", n_announced},
        {"n_matching_basis", n_matching_basis},
        {"n_matching_errors", n_matching_errors},
        {"n_out_of_basis", n_out_of_basis},
        {"n_out_of_basis_agree", n_out_of_basis_agree},
        {"n_pair_provenance", n_pair_provenance},
        {"matching_qber", matching_qber},
        {"qber_ci_lo", qber_ci_lo},
        {"qber_ci_hi", qber_ci_hi},
        {"out_of_basis_agreement", out_of_basis_agreement},
        {"realized_p2", realized_p2},
        {"accept_fraction", accept_fraction},
        {"wall_seconds", wall_seconds},
    };
    if (include_reports) {
        nlohmann::json reports_json = nlohmann::json::array();
        for (const VerificationReport& rep : reports) {
            reports_json.push_back(qbc::to_json(rep));
        }
        j["reports"] = std::move(reports_json);
    }
    return j;
}

AggregateStats run_monte_carlo(const SimConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    AggregateStats agg;
    agg.trials = config.trials;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        SessionResult session = run_session(config, i);
        const VerificationReport& rep = session.report;
        agg.n_accepted += rep.accepted ? 1 : 0;
        agg.n_sent += rep.n_sent;
        agg.n_announced += rep.n_announced;
        agg.n_matching_basis += rep.n_matching_basis;
        agg.n_matching_errors += rep.n_matching_errors;
        agg.n_out_of_basis += rep.n_out_of_basis;
        agg.n_out_of_basis_agree += rep.n_out_of_basis_agree;
        agg.n_pair_provenance += session.n_pair_provenance;
        agg.reports.push_back(rep);
    }

    agg.matching_qber =
        agg.n_matching_basis > 0
            ? static_cast<double>(agg.n_matching_errors) / agg.n_matching_basis
            : 0.0;
    const WilsonInterval ci =
        wilson_interval(agg.n_matching_errors, agg.n_matching_basis);
    agg.qber_ci_lo = ci.lo;
    agg.qber_ci_hi = ci.hi;
    agg.out_of_basis_agreement =
        agg.n_out_of_basis > 0
            ? static_cast<double>(agg.n_out_of_basis_agree) / agg.n_out_of_basis
            : 0.0;
    agg.realized_p2 =
        agg.n_announced > 0
            ? static_cast<double>(agg.n_pair_provenance) / agg.n_announced
            : 0.0;
    agg.accept_fraction = agg.trials > 0
                              ? static_cast<double>(agg.n_accepted) / agg.trials
                              : 0.0;
    agg.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return agg;
}

nlohmann::json HidingTestResult::to_json() const {
    nlohmann::json j = {
        {"chi_square", chi_square},
        {"p_value", p_value},
        {"dof", dof},
        {"n_bins", n_bins},
        {"sessions_per_bit", sessions_per_bit},
    };
    if (!note.empty()) j["note"] = note;
    return j;
}

HidingTestResult hiding_test(const SimConfig& config,
                             std::uint64_t sessions_per_bit) {
    config.validate();
    if (sessions_per_bit < 30) {
        throw std::invalid_argument("hiding_test: sessions_per_bit must be >= 30");
    }
    // The test concerns what an honest committer leaks, so the adversary is
    // forced off regardless of the incoming config.
    SimConfig honest = config;
    honest.adversary = AdversaryConfig{};
    honest.trials = 1;

    std::vector<std::uint64_t> counts[2];
    for (int bit = 0; bit < 2; ++bit) {
        SimConfig per_bit = honest;
        per_bit.commit_bit = bit;
        per_bit.seed = splitmix64(config.seed ^ splitmix64(kTagHiding + bit));
        counts[bit].reserve(sessions_per_bit);
        for (std::uint64_t i = 0; i < sessions_per_bit; ++i) {
            counts[bit].push_back(run_session(per_bit, i).report.n_announced);
        }
    }

    const ChiSquareResult chi = chi_square_two_sample(counts[0], counts[1]);
    HidingTestResult res;
    res.chi_square = chi.statistic;
    res.p_value = chi.p_value;
    res.dof = chi.dof;
    res.n_bins = chi.n_bins;
    res.sessions_per_bit = sessions_per_bit;
    res.note = chi.note;
    return res;
}

std::vector<SweepPoint> sweep(const SimConfig& config,
                              const std::string& parameter_path,
                              const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("sweep: need at least one value");
    }
    std::string pointer = parameter_path;
    if (pointer.empty()) throw std::invalid_argument("sweep: empty parameter path");
    if (pointer.front() != '/') {
        pointer = "/" + pointer;
        for (char& c : pointer) {
            if (c == '.') c = '/';
        }
    }
    const nlohmann::json::json_pointer ptr(pointer);

    nlohmann::json base = config_to_json(config);
    if (!base.contains(ptr)) {
        throw std::invalid_argument("sweep: unknown parameter path '" +
                                    parameter_path + "'");
    }
    if (!base.at(ptr).is_number()) {
        throw std::invalid_argument("sweep: parameter '" + parameter_path +
                                    "' is not numeric");
    }

    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double v : values) {
        nlohmann::json patched = base;
        patched[ptr] = v;
        SweepPoint point;
        point.param_value = v;
        point.stats = run_monte_carlo(config_from_json(patched));
        points.push_back(std::move(point));
    }
    return points;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
    std::string csv =
        "param_value,matching_qber,qber_ci_lo,qber_ci_hi,"
        "out_of_basis_agreement,realized_p2,accept_fraction,n_announced\n";
    char line[256];
    for (const SweepPoint& p : points) {
        std::snprintf(line, sizeof(line),
                      "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%llu\n",
                      p.param_value, p.stats.matching_qber, p.stats.qber_ci_lo,
                      p.stats.qber_ci_hi, p.stats.out_of_basis_agreement,
                      p.stats.realized_p2, p.stats.accept_fraction,
                      static_cast<unsigned long long>(p.stats.n_announced));
        csv += line;
    }
    return csv;
}

std::vector<Fig2Session> run_fig2(std::uint64_t seed) {
    SimConfig config;
    config.source.mean_photons_mu = 0.2;
    config.source.pulse_rate = 20.0;
    config.source.session_duration = 10.0;  // 200 expected pulses
    config.channel.visibility_v = 0.9;
    config.seed = seed;
    config.trials = 5;
    config.commit_bit = -1;

    std::vector<Fig2Session> sessions;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        const VerificationReport rep = run_session(config, i).report;
        Fig2Session s;
        s.n_in_basis = rep.n_matching_basis;
        s.n_out_of_basis = rep.n_out_of_basis;
        s.n_announced = rep.n_announced;
        s.in_basis_success = 1.0 - rep.matching_qber;
        s.out_of_basis_success = rep.out_of_basis_agreement;
        sessions.push_back(s);
    }
    return sessions;
}

}  // namespace qbc
