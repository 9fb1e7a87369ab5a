#include "qbc/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "qbc/random.hpp"

namespace qbc {

namespace {

constexpr StateLabel kBb84Labels[4] = {StateLabel::X, StateLabel::Y,
                                       StateLabel::L, StateLabel::R};

// First click wins; every photon is measured (threshold detector).
struct PulseClick {
    bool clicked = false;
    StateLabel outcome = StateLabel::X;
};

PulseClick measure_pulse(const std::vector<QubitState>& photons,
                         MeasBasis basis, const ChannelModel& ch,
                         RandomStream& rng) {
    PulseClick click;
    const auto labels = basis_labels(basis);
    const double eff = ch.efficiency_for(basis);
    for (const QubitState& photon : photons) {
        const UmziOutcome out = umzi_measure_state(photon, basis, ch.visibility_v, rng);
        if (out == UmziOutcome::SidePeak) continue;
        if (!rng.bernoulli(eff)) continue;
        if (!click.clicked) {
            click.clicked = true;
            click.outcome = labels[out == UmziOutcome::Detector0 ? 0 : 1];
        }
    }
    if (!click.clicked && ch.dark_count_prob > 0.0 &&
        rng.bernoulli(ch.dark_count_prob)) {
        click.clicked = true;
        click.outcome = labels[rng.uniform_int(2)];
    }
    return click;
}

}  // namespace

int bit_of_basis(MeasBasis basis) {
    switch (basis) {
        case MeasBasis::XY: return 0;
        case MeasBasis::LR: return 1;
        default:
            throw std::invalid_argument("bit_of_basis: commitment bases are XY or LR");
    }
}

MeasBasis basis_of_bit(int bit) {
    if (bit == 0) return MeasBasis::XY;
    if (bit == 1) return MeasBasis::LR;
    throw std::invalid_argument("basis_of_bit: bit must be 0 or 1");
}

std::string to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::QberTooHigh: return "qber";
        case RejectReason::RateTooLow: return "rate_low";
        case RejectReason::RateAnomaly: return "rate_anomaly";
        case RejectReason::Malformed: return "malformed";
    }
    throw std::invalid_argument("to_string: unknown reject reason");
}

void Thresholds::validate() const {
    if (!(qber_threshold >= 0.0 && qber_threshold <= 1.0)) {
        throw std::invalid_argument("thresholds.qber_threshold must be in [0,1]");
    }
    if (!(rate_floor >= 0.0)) {
        throw std::invalid_argument("thresholds.rate_floor must be >= 0");
    }
    if (!(rate_ceiling >= rate_floor)) {
        throw std::invalid_argument("thresholds.rate_ceiling must be >= rate_floor");
    }
}

std::vector<PulseRecord> bob_prepare_session(const SourceModel& src,
                                             RandomStream& rng) {
    src.validate();
    std::vector<PulseRecord> records;
    double t = 0.0;
    std::uint64_t id = 0;
    for (;;) {
        t += rng.exponential(src.pulse_rate);
        if (t >= src.session_duration) break;
        records.push_back(PulseRecord{
            .pulse_id = id++,
            .send_time = t,
            .label = kBb84Labels[rng.uniform_int(4)],
            .mu = src.heralded ? 1.0 : src.mean_photons_mu,
        });
    }
    return records;
}

std::vector<PulsePhysicalOutcome> propagate_session(
    const std::vector<PulseRecord>& records, const SourceModel& src,
    const ChannelModel& ch, RandomStream& rng) {
    ch.validate();
    std::vector<PulsePhysicalOutcome> arrivals;
    arrivals.reserve(records.size());
    for (const PulseRecord& rec : records) {
        arrivals.push_back(PulsePhysicalOutcome{
            .pulse_id = rec.pulse_id,
            .photons = propagate_photons(rec.label, src, ch, rng),
        });
    }
    return arrivals;
}

std::pair<Announcement, CommitStore> alice_commit(
    int bit, const std::vector<PulsePhysicalOutcome>& arrivals,
    const ChannelModel& ch, RandomStream& rng) {
    const MeasBasis basis = basis_of_bit(bit);
    Announcement ann;
    CommitStore store;
    store.bit = bit;
    for (const PulsePhysicalOutcome& pulse : arrivals) {
        const PulseClick click = measure_pulse(pulse.photons, basis, ch, rng);
        if (click.clicked) {
            ann.detected_pulse_ids.push_back(pulse.pulse_id);
            store.outcomes.emplace(pulse.pulse_id, click.outcome);
        }
    }
    return {std::move(ann), std::move(store)};
}

OpeningRecord alice_open(const CommitStore& store, int bit, bool force) {
    if (bit != store.bit && !force) {
        throw std::logic_error(
            "alice_open: opening a different bit than committed");
    }
    OpeningRecord open;
    open.commitment_bit = bit;
    open.basis = basis_of_bit(bit);
    open.outcomes = store.outcomes;
    return open;
}

VerificationReport bob_verify(const std::vector<PulseRecord>& records,
                              const Announcement& ann,
                              const OpeningRecord& open, const Thresholds& th,
                              double expected_rate) {
    th.validate();
    VerificationReport rep;
    rep.n_sent = records.size();
    rep.n_announced = ann.detected_pulse_ids.size();
    rep.expected_rate = expected_rate;
    if (rep.n_sent == 0) rep.note = "empty_session";

    const auto malformed = [&rep](const std::string& why) {
        rep.accepted = false;
        rep.reason = RejectReason::Malformed;
        rep.note = why;
        return rep;
    };

    if (open.basis != basis_of_bit(open.commitment_bit)) {
        return malformed("bit/basis mapping violated");
    }

    std::unordered_map<std::uint64_t, StateLabel> sent;
    sent.reserve(records.size());
    for (const PulseRecord& rec : records) sent.emplace(rec.pulse_id, rec.label);

    // Announcement must be a strictly increasing subset of the sent ids and
    // the opening must be keyed by exactly the announced ids with labels in
    // the opened basis.
    if (open.outcomes.size() != rep.n_announced) {
        return malformed("opening does not cover the announced pulses");
    }
    std::uint64_t prev = 0;
    bool first = true;
    for (std::uint64_t id : ann.detected_pulse_ids) {
        if (!first && id <= prev) return malformed("announcement ids not sorted");
        first = false;
        prev = id;
        if (!sent.contains(id)) return malformed("announced id was never sent");
        const auto it = open.outcomes.find(id);
        if (it == open.outcomes.end()) {
            return malformed("announced pulse missing from opening");
        }
        if (basis_of(it->second) != open.basis) {
            return malformed("opened outcome label outside the opened basis");
        }
    }

    for (std::uint64_t id : ann.detected_pulse_ids) {
        const StateLabel prepared = sent.at(id);
        const StateLabel claimed = open.outcomes.at(id);
        if (basis_of(prepared) == open.basis) {
            ++rep.n_matching_basis;
            if (claimed != prepared) ++rep.n_matching_errors;
        } else {
            ++rep.n_out_of_basis;
            if (detector_index(claimed) == detector_index(prepared)) {
                ++rep.n_out_of_basis_agree;
            }
        }
    }

    rep.matching_qber =
        rep.n_matching_basis > 0
            ? static_cast<double>(rep.n_matching_errors) / rep.n_matching_basis
            : 0.0;
    rep.out_of_basis_agreement =
        rep.n_out_of_basis > 0
            ? static_cast<double>(rep.n_out_of_basis_agree) / rep.n_out_of_basis
            : 0.0;
    rep.detection_rate =
        rep.n_sent > 0 ? static_cast<double>(rep.n_announced) / rep.n_sent : 0.0;

    if (rep.detection_rate < th.rate_floor * expected_rate) {
        rep.accepted = false;
        rep.reason = RejectReason::RateTooLow;
    } else if (rep.detection_rate > th.rate_ceiling * expected_rate) {
        rep.accepted = false;
        rep.reason = RejectReason::RateAnomaly;
    } else if (rep.matching_qber > th.qber_threshold) {
        rep.accepted = false;
        rep.reason = RejectReason::QberTooHigh;
    } else {
        rep.accepted = true;
        rep.reason = RejectReason::None;
    }
    return rep;
}

LegacySessionResult run_legacy_session(const SourceModel& src,
                                       const ChannelModel& ch,
                                       const Thresholds& th, int bob_bit,
                                       bool bob_cheats, double qnd_success_q,
                                       double storage_fidelity_f,
                                       RandomStream& rng) {
    src.validate();
    ch.validate();
    th.validate();
    const MeasBasis pair = basis_of_bit(bob_bit);
    const auto pair_labels = basis_labels(pair);

    struct LegacyPulse {
        bool epr = false;            // deferred-choice pulse (cheating Bob)
        StateLabel sent = StateLabel::X;  // definite label when not epr
        MeasBasis alice_basis = MeasBasis::XY;
        StateLabel alice_outcome = StateLabel::X;
        bool clicked = false;
    };

    std::uint64_t n_sent = 0;
    std::vector<std::uint64_t> announced_ids;
    std::vector<LegacyPulse> announced;

    double t = 0.0;
    for (std::uint64_t id = 0;; ++id) {
        t += rng.exponential(src.pulse_rate);
        if (t >= src.session_duration) break;
        ++n_sent;

        LegacyPulse pulse;
        if (!bob_cheats) {
            pulse.sent = pair_labels[rng.uniform_int(2)];
        } else {
            pulse.epr = rng.bernoulli(qnd_success_q);
            if (!pulse.epr) {
                // Deferred-choice hardware failed for this pulse; fall back
                // to a definite uniformly random BB84 state.
                pulse.sent = kBb84Labels[rng.uniform_int(4)];
            }
        }
        pulse.alice_basis = rng.uniform_int(2) == 0 ? MeasBasis::XY : MeasBasis::LR;

        const int emitted = sample_photon_number(src, rng);
        const int arrivals = transmit(emitted, ch.transmittance_eta, rng);
        const auto alice_labels = basis_labels(pulse.alice_basis);
        const double eff = ch.efficiency_for(pulse.alice_basis);
        for (int i = 0; i < arrivals; ++i) {
            UmziOutcome out;
            if (pulse.epr) {
                // Half of an entangled pair is maximally mixed: uniform
                // central-window outcome in any basis.
                out = rng.bernoulli(0.5)
                          ? UmziOutcome::SidePeak
                          : (rng.bernoulli(0.5) ? UmziOutcome::Detector0
                                                : UmziOutcome::Detector1);
            } else {
                const StateLabel noisy =
                    apply_channel_error(pulse.sent, ch.qubit_error_e, rng);
                out = umzi_measure_state(state_of(noisy), pulse.alice_basis,
                                         ch.visibility_v, rng);
            }
            if (out == UmziOutcome::SidePeak) continue;
            if (!rng.bernoulli(eff)) continue;
            if (!pulse.clicked) {
                pulse.clicked = true;
                pulse.alice_outcome =
                    alice_labels[out == UmziOutcome::Detector0 ? 0 : 1];
            }
        }
        if (!pulse.clicked && ch.dark_count_prob > 0.0 &&
            rng.bernoulli(ch.dark_count_prob)) {
            pulse.clicked = true;
            pulse.alice_outcome = alice_labels[rng.uniform_int(2)];
        }
        if (pulse.clicked) {
            announced_ids.push_back(id);
            announced.push_back(pulse);
        }
    }

    // Opening: Bob reveals the pair and one label per announced pulse.
    LegacySessionResult result;
    result.announcement.detected_pulse_ids = announced_ids;
    result.opening.commitment_bit = bob_bit;
    result.opening.basis = pair;

    VerificationReport rep;
    rep.n_sent = n_sent;
    rep.n_announced = announced.size();
    rep.expected_rate = expected_click_rate(src, ch);
    if (n_sent == 0) rep.note = "empty_session";

    for (std::size_t i = 0; i < announced.size(); ++i) {
        const LegacyPulse& pulse = announced[i];
        StateLabel revealed;
        if (!bob_cheats) {
            revealed = pulse.sent;
        } else if (pulse.epr) {
            if (pulse.alice_basis == pair) {
                // Measuring the kept half in the opened pair reproduces
                // Alice's outcome up to channel decorrelation and the
                // storage flip.
                revealed = pulse.alice_outcome;
                if (rng.bernoulli(ch.qubit_error_e)) revealed = orthogonal(revealed);
                if (rng.bernoulli(1.0 - storage_fidelity_f)) {
                    revealed = orthogonal(revealed);
                }
            } else {
                revealed = pair_labels[rng.uniform_int(2)];
            }
        } else {
            revealed = basis_of(pulse.sent) == pair
                           ? pulse.sent
                           : pair_labels[rng.uniform_int(2)];
        }
        result.opening.outcomes.emplace(announced_ids[i], revealed);

        if (pulse.alice_basis == pair) {
            ++rep.n_matching_basis;
            if (pulse.alice_outcome != revealed) ++rep.n_matching_errors;
        } else {
            ++rep.n_out_of_basis;
            if (detector_index(pulse.alice_outcome) == detector_index(revealed)) {
                ++rep.n_out_of_basis_agree;
            }
        }
    }

    rep.matching_qber =
        rep.n_matching_basis > 0
            ? static_cast<double>(rep.n_matching_errors) / rep.n_matching_basis
            : 0.0;
    rep.out_of_basis_agreement =
        rep.n_out_of_basis > 0
            ? static_cast<double>(rep.n_out_of_basis_agree) / rep.n_out_of_basis
            : 0.0;
    rep.detection_rate =
        rep.n_sent > 0 ? static_cast<double>(rep.n_announced) / rep.n_sent : 0.0;

    if (rep.detection_rate < th.rate_floor * rep.expected_rate) {
        rep.accepted = false;
        rep.reason = RejectReason::RateTooLow;
    } else if (rep.detection_rate > th.rate_ceiling * rep.expected_rate) {
        rep.accepted = false;
        rep.reason = RejectReason::RateAnomaly;
    } else if (rep.matching_qber > th.qber_threshold) {
        rep.accepted = false;
        rep.reason = RejectReason::QberTooHigh;
    } else {
        rep.accepted = true;
        rep.reason = RejectReason::None;
    }
    result.report = rep;
    return result;
}

}  // namespace qbc
