#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qbc/qstate.hpp"

namespace qbc {

class RandomStream;

// Faint-pulse source. By default the photon number per pulse is Poisson with
// mean `mean_photons_mu` (weak coherent pulse); with `heralded` set the
// source emits exactly one photon per pulse and losses still apply.
struct SourceModel {
    double mean_photons_mu = 0.2;
    double pulse_rate = 100.0;      // pulses per time unit
    double session_duration = 10.0; // time units
    bool heralded = false;

    void validate() const;  // throws std::invalid_argument
};

// Loss and noise environment between the sender's encoder and the
// receiver's detectors.
struct ChannelModel {
    double transmittance_eta = 1.0;   // per-photon survival probability
    double qubit_error_e = 0.0;       // basis-orthogonal flip probability
    double visibility_v = 1.0;        // interference visibility
    double detector_efficiency = 1.0;
    double dark_count_prob = 0.0;     // per detection window
    // Optional separate efficiency for the LR measurement setting. Equal
    // efficiencies keep the detection probability basis-independent, which
    // is what the hiding property rests on.
    std::optional<double> detector_efficiency_lr;

    double efficiency_for(MeasBasis basis) const;
    void validate() const;
};

// What physically reaches the receiver for one pulse: the surviving photons
// after loss and channel noise. Deliberately carries no record of what the
// sender prepared.
struct PulsePhysicalOutcome {
    std::uint64_t pulse_id = 0;
    std::vector<QubitState> photons;

    int photons_at_alice() const { return static_cast<int>(photons.size()); }
};

// Poisson(mu) photon count of one weak pulse.
int sample_photon_number(double mu, RandomStream& rng);

// Source-aware photon count (heralded -> exactly 1).
int sample_photon_number(const SourceModel& src, RandomStream& rng);

// Binomial(n, eta) survivors of n photons through a lossy channel.
int transmit(int n, double eta, RandomStream& rng);

// With probability e, flip a BB84 label to its basis-orthogonal partner.
// Breidbart labels are rejected.
StateLabel apply_channel_error(StateLabel label, double e, RandomStream& rng);

enum class UmziOutcome { Detector0, Detector1, SidePeak };

// Phase encoding of the four BB84 labels: X->0, Y->pi, L->pi/2, R->3pi/2.
double phase_of_label(StateLabel label);
// Receiver phase setting per basis: XY->0, LR->pi/2.
double phase_of_basis(MeasBasis basis);

// Interference measurement of one photon in the receiver's unbalanced
// interferometer. Half the photons land in the non-interfering side peaks
// and are discarded; in the central window the detector split follows
// (1 +/- v cos(phase_bob - phase_alice)) / 2.
UmziOutcome umzi_detect(double phase_bob, double phase_alice, double v,
                        RandomStream& rng);

// Same physics for an arbitrary input state: central-window probability of
// Detector0 is v * |<b0|s>|^2 + (1-v)/2, which reduces to the phase form
// for the four BB84 states.
UmziOutcome umzi_measure_state(const QubitState& s, MeasBasis basis, double v,
                               RandomStream& rng);

// Threshold detector: true if at least one of `arrivals` photons is detected
// (each independently with detector_efficiency) or a dark count fires.
bool detect(int arrivals, double detector_efficiency, double dark_count_prob,
            RandomStream& rng);

// Probability an honest receiver registers a click given k photons arrived:
// each photon is detected with probability eff/2 (central window times
// detector efficiency), plus the dark-count contribution.
double honest_click_prob(int k, double detector_efficiency,
                         double dark_count_prob);

// Bob's public rate model: the fraction of sent pulses an honest session is
// expected to announce — P(>=1 photon arrives) x 1/2 side-peak factor x
// detector efficiency. Dark counts are deliberately not included.
double expected_click_rate(const SourceModel& src, const ChannelModel& ch);

// Propagate one prepared pulse: sample the photon number, thin by loss, and
// apply channel noise per photon. Returns only the surviving states.
std::vector<QubitState> propagate_photons(StateLabel label,
                                          const SourceModel& src,
                                          const ChannelModel& ch,
                                          RandomStream& rng);

}  // namespace qbc
