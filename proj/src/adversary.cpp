#include "qbc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbc/random.hpp"

namespace qbc {

namespace {

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
    }
}

// Honest-mimicking announcement coin for a pulse that delivered k photons.
bool announce_coin(int k, const ChannelModel& ch, RandomStream& rng) {
    return rng.bernoulli(
        honest_click_prob(k, ch.detector_efficiency, ch.dark_count_prob));
}

CheatEntry synthesize_pair_entry(const QubitState& s, RandomStream& rng) {
    CheatEntry entry;
    entry.provenance = Provenance::PairBothBases;
    entry.xy_label = measure(s, MeasBasis::XY, rng);
    entry.lr_label = measure(s, MeasBasis::LR, rng);
    return entry;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Honest: return "honest";
        case Strategy::Breidbart: return "breidbart";
        case Strategy::PairSplit: return "pair_split";
        case Strategy::Delayed: return "delayed";
        case Strategy::Combined: return "combined";
    }
    throw std::invalid_argument("to_string: unknown strategy");
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "honest") return Strategy::Honest;
    if (s == "breidbart") return Strategy::Breidbart;
    if (s == "pair_split") return Strategy::PairSplit;
    if (s == "delayed") return Strategy::Delayed;
    if (s == "combined") return Strategy::Combined;
    throw std::invalid_argument("strategy_from_string: unknown strategy '" + s + "'");
}

void AdversaryConfig::validate() const {
    check_prob(qnd_success_q, "adversary.qnd_success_q");
    check_prob(storage_fidelity_f, "adversary.storage_fidelity_f");
    if (forced_p2 > 1.0) {
        throw std::invalid_argument("adversary.forced_p2 must be <= 1");
    }
}

StateLabel breidbart_claim(StateLabel breidbart_outcome, MeasBasis basis) {
    const bool xy = basis == MeasBasis::XY;
    switch (breidbart_outcome) {
        case StateLabel::V1: return xy ? StateLabel::Y : StateLabel::R;
        case StateLabel::U1: return xy ? StateLabel::X : StateLabel::L;
        case StateLabel::V2: return xy ? StateLabel::Y : StateLabel::L;
        case StateLabel::U2: return xy ? StateLabel::X : StateLabel::R;
        default:
            throw std::invalid_argument(
                "breidbart_claim: outcome must be an intermediate-basis label");
    }
}

CheatEntry breidbart_measure_and_store(const QubitState& s, RandomStream& rng) {
    const MeasBasis basis =
        rng.uniform_int(2) == 0 ? MeasBasis::B1 : MeasBasis::B2;
    CheatEntry entry;
    entry.provenance = basis == MeasBasis::B1 ? Provenance::BreidbartB1
                                              : Provenance::BreidbartB2;
    entry.breidbart_outcome = measure(s, basis, rng);
    return entry;
}

CheatEntry pair_split_measure(const std::vector<QubitState>& photons,
                              RandomStream& rng) {
    if (photons.size() < 2) {
        throw std::logic_error("pair_split_measure: needs at least two photons");
    }
    CheatEntry entry;
    entry.provenance = Provenance::PairBothBases;
    entry.xy_label = measure(photons[0], MeasBasis::XY, rng);
    entry.lr_label = measure(photons[1], MeasBasis::LR, rng);
    return entry;
}

std::optional<CheatEntry> delayed_measure(const QubitState& s, double q,
                                          RandomStream& rng) {
    check_prob(q, "q");
    if (!rng.bernoulli(q)) return std::nullopt;
    CheatEntry entry;
    entry.provenance = Provenance::StoredQubit;
    entry.stored = s;
    return entry;
}

std::uint64_t rate_budget_for(std::uint64_t n_sent, const SourceModel& src,
                              const ChannelModel& ch, double rate_floor) {
    if (rate_floor < 0.0) {
        throw std::invalid_argument("rate_floor must be >= 0");
    }
    const double expected =
        static_cast<double>(n_sent) * expected_click_rate(src, ch) * rate_floor;
    return static_cast<std::uint64_t>(std::ceil(expected));
}

std::uint64_t rate_budget(const SourceModel& src, const ChannelModel& ch,
                          double rate_floor) {
    const double expected_sent = src.pulse_rate * src.session_duration;
    return rate_budget_for(static_cast<std::uint64_t>(std::llround(expected_sent)),
                           src, ch, rate_floor);
}

AdversaryCommitResult adversary_commit(
    const std::vector<PulsePhysicalOutcome>& arrivals,
    const AdversaryConfig& cfg, const SourceModel& src, const ChannelModel& ch,
    const Thresholds& th, std::uint64_t n_sent, RandomStream& rng) {
    cfg.validate();
    AdversaryCommitResult result;
    auto& entries = result.store.entries;

    switch (cfg.strategy) {
        case Strategy::Honest:
            throw std::logic_error("adversary_commit: honest sessions use alice_commit");

        case Strategy::Breidbart: {
            for (const auto& pulse : arrivals) {
                if (pulse.photons.empty()) continue;
                if (!announce_coin(pulse.photons_at_alice(), ch, rng)) continue;
                entries.emplace(pulse.pulse_id,
                                breidbart_measure_and_store(pulse.photons[0], rng));
            }
            break;
        }

        case Strategy::PairSplit: {
            // Announce only multi-photon pulses; the detection rate this
            // yields is far below the honest one, which is exactly what the
            // verifier's rate floor is for.
            for (const auto& pulse : arrivals) {
                if (pulse.photons.size() < 2) continue;
                entries.emplace(pulse.pulse_id,
                                pair_split_measure(pulse.photons, rng));
            }
            break;
        }

        case Strategy::Delayed: {
            for (const auto& pulse : arrivals) {
                if (pulse.photons.empty()) continue;
                auto stored = delayed_measure(pulse.photons[0], cfg.qnd_success_q, rng);
                if (!stored) continue;
                if (!announce_coin(pulse.photons_at_alice(), ch, rng)) continue;
                entries.emplace(pulse.pulse_id, *stored);
            }
            break;
        }

        case Strategy::Combined: {
            if (cfg.forced_p2 >= 0.0) {
                // Synthetic provenance assignment for model validation.
                for (const auto& pulse : arrivals) {
                    if (pulse.photons.empty()) continue;
                    if (!announce_coin(pulse.photons_at_alice(), ch, rng)) continue;
                    if (rng.bernoulli(cfg.forced_p2)) {
                        entries.emplace(pulse.pulse_id,
                                        synthesize_pair_entry(pulse.photons[0], rng));
                    } else {
                        entries.emplace(
                            pulse.pulse_id,
                            breidbart_measure_and_store(pulse.photons[0], rng));
                    }
                }
                break;
            }

            // Announce every pair pulse, then fill up to the rate budget
            // with Breidbart-measured singles chosen uniformly at random.
            std::vector<const PulsePhysicalOutcome*> singles;
            for (const auto& pulse : arrivals) {
                if (pulse.photons.size() >= 2 && cfg.exploit_pairs) {
                    entries.emplace(pulse.pulse_id,
                                    pair_split_measure(pulse.photons, rng));
                } else if (!pulse.photons.empty()) {
                    singles.push_back(&pulse);
                }
            }
            const std::uint64_t budget =
                rate_budget_for(n_sent, src, ch, th.rate_floor);
            if (entries.size() < budget) {
                std::uint64_t needed = budget - entries.size();
                rng.shuffle(singles);
                for (const auto* pulse : singles) {
                    if (needed == 0) break;
                    entries.emplace(pulse->pulse_id,
                                    breidbart_measure_and_store(pulse->photons[0], rng));
                    --needed;
                }
                // If the budget is unreachable everything available is
                // announced and the cheat stays rate-visible.
            }
            break;
        }
    }

    std::uint64_t pairs = 0;
    for (const auto& [id, entry] : entries) {
        result.announcement.detected_pulse_ids.push_back(id);
        if (entry.provenance == Provenance::PairBothBases) ++pairs;
    }
    // std::map iterates in key order, so the announcement is sorted.
    result.realized_p2 =
        entries.empty() ? 0.0 : static_cast<double>(pairs) / entries.size();
    return result;
}

OpeningRecord adversary_open(const CheatOutcomeStore& store, int bit,
                             double storage_fidelity_f, RandomStream& rng) {
    check_prob(storage_fidelity_f, "storage_fidelity_f");
    OpeningRecord open;
    open.commitment_bit = bit;
    open.basis = basis_of_bit(bit);
    for (const auto& [id, entry] : store.entries) {
        StateLabel claimed;
        switch (entry.provenance) {
            case Provenance::BreidbartB1:
            case Provenance::BreidbartB2:
                claimed = breidbart_claim(entry.breidbart_outcome, open.basis);
                break;
            case Provenance::PairBothBases:
                claimed = open.basis == MeasBasis::XY ? entry.xy_label
                                                      : entry.lr_label;
                break;
            case Provenance::StoredQubit:
                claimed = measure(entry.stored, open.basis, rng);
                if (rng.bernoulli(1.0 - storage_fidelity_f)) {
                    claimed = orthogonal(claimed);
                }
                break;
        }
        open.outcomes.emplace(id, claimed);
    }
    return open;
}

}  // namespace qbc
