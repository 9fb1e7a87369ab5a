#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qbc/protocol.hpp"

namespace qbc {

class RandomStream;

enum class Strategy { Honest, Breidbart, PairSplit, Delayed, Combined };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// Technology parameters of a cheating Alice who tries to postpone the
// commitment past the announcement.
struct AdversaryConfig {
    Strategy strategy = Strategy::Honest;
    // Probability a nondemolition arrival-time measurement succeeds and the
    // qubit enters storage.
    double qnd_success_q = 0.0;
    // Probability a stored qubit is read back without a flip.
    double storage_fidelity_f = 1.0;
    // Whether the Combined strategy splits multi-photon pulses across bases.
    bool exploit_pairs = true;
    // Test hook: when in [0,1], pair provenance is assigned per announced
    // pulse by a coin with this bias instead of by photon statistics, so the
    // cheat error-rate model can be validated across the whole p2 range.
    // Negative disables.
    double forced_p2 = -1.0;

    void validate() const;
};

enum class Provenance { BreidbartB1, BreidbartB2, PairBothBases, StoredQubit };

// Everything the cheater keeps about one announced pulse — enough to answer
// an opening in either basis.
struct CheatEntry {
    Provenance provenance = Provenance::BreidbartB1;
    // Intermediate-basis outcome (BreidbartB1/B2 provenance).
    StateLabel breidbart_outcome = StateLabel::V1;
    // One label per BB84 basis (PairBothBases provenance).
    StateLabel xy_label = StateLabel::X;
    StateLabel lr_label = StateLabel::L;
    // The stored state, measured only at opening (StoredQubit provenance).
    QubitState stored;
};

struct CheatOutcomeStore {
    std::map<std::uint64_t, CheatEntry> entries;  // keyed by announced id
};

// The label a Breidbart outcome claims when opening in `basis`: always the
// basis vector with squared overlap cos^2(pi/8) against the outcome state.
StateLabel breidbart_claim(StateLabel breidbart_outcome, MeasBasis basis);

// Measure one photon in a uniformly chosen intermediate basis and store the
// outcome.
CheatEntry breidbart_measure_and_store(const QubitState& s, RandomStream& rng);

// Split a multi-photon pulse: measure one photon per BB84 basis and store
// both labels. Requires at least two photons; extras are ignored.
CheatEntry pair_split_measure(const std::vector<QubitState>& photons,
                              RandomStream& rng);

// Nondemolition gate plus storage: with probability q the state is stored
// intact (read-out infidelity is applied at opening); otherwise the photon
// is lost and cannot be announced.
std::optional<CheatEntry> delayed_measure(const QubitState& s, double q,
                                          RandomStream& rng);

// Minimum announced-detection count that passes the verifier's rate floor,
// based on the expected honest rate over the expected number of sent pulses.
std::uint64_t rate_budget(const SourceModel& src, const ChannelModel& ch,
                          double rate_floor);
// Same, for a known sent-pulse count.
std::uint64_t rate_budget_for(std::uint64_t n_sent, const SourceModel& src,
                              const ChannelModel& ch, double rate_floor);

struct AdversaryCommitResult {
    Announcement announcement;
    CheatOutcomeStore store;
    // Pair-provenance fraction among announced pulses.
    double realized_p2 = 0.0;
};

// Run the configured strategy over what physically arrived. The adversary
// sees only arrival contents — never the sender's records — and throttles
// announcements to the honest click statistics so the detection rate stays
// inside the verifier's window (except PairSplit, which is rate-limited by
// construction).
AdversaryCommitResult adversary_commit(
    const std::vector<PulsePhysicalOutcome>& arrivals,
    const AdversaryConfig& cfg, const SourceModel& src, const ChannelModel& ch,
    const Thresholds& th, std::uint64_t n_sent, RandomStream& rng);

// Answer an opening request for either bit from the stored record.
OpeningRecord adversary_open(const CheatOutcomeStore& store, int bit,
                             double storage_fidelity_f, RandomStream& rng);

}  // namespace qbc
