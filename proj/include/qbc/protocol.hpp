#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbc/photonics.hpp"

namespace qbc {

class RandomStream;

// Public bit <-> basis convention: 0 -> XY, 1 -> LR.
int bit_of_basis(MeasBasis basis);
MeasBasis basis_of_bit(int bit);

// Bob's private log entry for one sent pulse.
struct PulseRecord {
    std::uint64_t pulse_id = 0;
    double send_time = 0.0;
    StateLabel label = StateLabel::X;  // one of X, Y, L, R
    double mu = 0.0;
};

// Alice's public announcement: which pulses produced a click. Carries no
// basis or outcome information by construction.
struct Announcement {
    std::vector<std::uint64_t> detected_pulse_ids;  // sorted
};

// The opened commitment: the basis and the measurement outcome for every
// announced pulse.
struct OpeningRecord {
    int commitment_bit = 0;
    MeasBasis basis = MeasBasis::XY;
    std::map<std::uint64_t, StateLabel> outcomes;
};

enum class RejectReason { None, QberTooHigh, RateTooLow, RateAnomaly, Malformed };

std::string to_string(RejectReason reason);

struct VerificationReport {
    std::uint64_t n_sent = 0;
    std::uint64_t n_announced = 0;
    std::uint64_t n_matching_basis = 0;
    std::uint64_t n_matching_errors = 0;
    std::uint64_t n_out_of_basis = 0;
    std::uint64_t n_out_of_basis_agree = 0;
    double matching_qber = 0.0;
    double detection_rate = 0.0;
    double expected_rate = 0.0;
    double out_of_basis_agreement = 0.0;
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    std::string note;
};

struct Thresholds {
    double qber_threshold = 0.05;
    // Detection-rate window as multiples of the expected honest rate. The
    // floor forces a cheater to announce more than just multi-photon pulses;
    // the ceiling flags rates only dark counts could produce.
    double rate_floor = 0.5;
    double rate_ceiling = 1.5;

    void validate() const;
};

// Step 1: pulses at Poisson-process random times, labels uniform over the
// four BB84 states. The records stay private to Bob.
std::vector<PulseRecord> bob_prepare_session(const SourceModel& src,
                                             RandomStream& rng);

// Channel propagation of a whole session; yields what Alice physically
// receives, with no label information attached.
std::vector<PulsePhysicalOutcome> propagate_session(
    const std::vector<PulseRecord>& records, const SourceModel& src,
    const ChannelModel& ch, RandomStream& rng);

// Alice's private record of her committed measurement.
struct CommitStore {
    int bit = 0;
    std::map<std::uint64_t, StateLabel> outcomes;  // announced pulses only
};

// Step 2: measure every arriving photon in the basis fixed by `bit` through
// the interferometer path; announce exactly the pulses that clicked.
std::pair<Announcement, CommitStore> alice_commit(
    int bit, const std::vector<PulsePhysicalOutcome>& arrivals,
    const ChannelModel& ch, RandomStream& rng);

// Step 3 (Alice's side): reveal basis and stored outcomes. Opening a bit
// other than the committed one throws unless `force` is set (adversary
// tests exercise that path; an honest store opened to the wrong bit is
// rejected by verification as malformed).
OpeningRecord alice_open(const CommitStore& store, int bit, bool force = false);

// Step 3 (Bob's side): check announced outcomes against his records in the
// opened basis, check the detection rate against the expected honest rate,
// and report the out-of-basis agreement as a diagnostic. Pure function.
VerificationReport bob_verify(const std::vector<PulseRecord>& records,
                              const Announcement& ann,
                              const OpeningRecord& open, const Thresholds& th,
                              double expected_rate);

// Legacy role-swapped variant: Bob commits by sending states drawn from one
// basis pair only; Alice measures in random bases and verifies at opening.
// A cheating Bob defers the choice via the delayed-measurement model
// (nondemolition success q, storage fidelity f) standing in for the
// entangled-pair attack.
struct LegacySessionResult {
    Announcement announcement;
    OpeningRecord opening;
    VerificationReport report;
};

LegacySessionResult run_legacy_session(const SourceModel& src,
                                       const ChannelModel& ch,
                                       const Thresholds& th, int bob_bit,
                                       bool bob_cheats, double qnd_success_q,
                                       double storage_fidelity_f,
                                       RandomStream& rng);

}  // namespace qbc
