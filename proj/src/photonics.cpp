#include "qbc/photonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbc/random.hpp"

namespace qbc {

namespace {

void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
    }
}

}  // namespace

void SourceModel::validate() const {
    if (!(mean_photons_mu >= 0.0)) {
        throw std::invalid_argument("source.mean_photons_mu must be >= 0");
    }
    if (!(pulse_rate > 0.0)) {
        throw std::invalid_argument("source.pulse_rate must be > 0");
    }
    if (!(session_duration > 0.0)) {
        throw std::invalid_argument("source.session_duration must be > 0");
    }
}

double ChannelModel::efficiency_for(MeasBasis basis) const {
    if (basis == MeasBasis::LR && detector_efficiency_lr.has_value()) {
        return *detector_efficiency_lr;
    }
    return detector_efficiency;
}

void ChannelModel::validate() const {
    check_unit_interval(transmittance_eta, "channel.transmittance_eta");
    check_unit_interval(qubit_error_e, "channel.qubit_error_e");
    check_unit_interval(visibility_v, "channel.visibility_v");
    check_unit_interval(detector_efficiency, "channel.detector_efficiency");
    check_unit_interval(dark_count_prob, "channel.dark_count_prob");
    if (detector_efficiency_lr.has_value()) {
        check_unit_interval(*detector_efficiency_lr,
                            "channel.detector_efficiency_lr");
    }
}

int sample_photon_number(double mu, RandomStream& rng) {
    if (mu < 0.0) throw std::invalid_argument("mean photon number must be >= 0");
    return rng.poisson(mu);
}

int sample_photon_number(const SourceModel& src, RandomStream& rng) {
    if (src.heralded) return 1;
    return sample_photon_number(src.mean_photons_mu, rng);
}

int transmit(int n, double eta, RandomStream& rng) {
    check_unit_interval(eta, "eta");
    return rng.binomial(n, eta);
}

StateLabel apply_channel_error(StateLabel label, double e, RandomStream& rng) {
    if (!is_bb84(label)) {
        throw std::invalid_argument(
            "apply_channel_error: only BB84 labels travel the channel");
    }
    check_unit_interval(e, "e");
    return rng.bernoulli(e) ? orthogonal(label) : label;
}

double phase_of_label(StateLabel label) {
    switch (label) {
        case StateLabel::X: return 0.0;
        case StateLabel::Y: return std::numbers::pi;
        case StateLabel::L: return std::numbers::pi / 2.0;
        case StateLabel::R: return 3.0 * std::numbers::pi / 2.0;
        default:
            throw std::invalid_argument(
                "phase_of_label: only BB84 labels have a phase encoding");
    }
}

double phase_of_basis(MeasBasis basis) {
    switch (basis) {
        case MeasBasis::XY: return 0.0;
        case MeasBasis::LR: return std::numbers::pi / 2.0;
        default:
            throw std::invalid_argument(
                "phase_of_basis: receiver settings are XY or LR");
    }
}

UmziOutcome umzi_detect(double phase_bob, double phase_alice, double v,
                        RandomStream& rng) {
    check_unit_interval(v, "visibility");
    if (rng.bernoulli(0.5)) return UmziOutcome::SidePeak;
    const double p0 = 0.5 * (1.0 + v * std::cos(phase_bob - phase_alice));
    return rng.bernoulli(p0) ? UmziOutcome::Detector0 : UmziOutcome::Detector1;
}

UmziOutcome umzi_measure_state(const QubitState& s, MeasBasis basis, double v,
                               RandomStream& rng) {
    check_unit_interval(v, "visibility");
    if (rng.bernoulli(0.5)) return UmziOutcome::SidePeak;
    const auto labels = basis_labels(basis);
    const double p0 =
        v * overlap_prob(state_of(labels[0]), s) + 0.5 * (1.0 - v);
    return rng.bernoulli(p0) ? UmziOutcome::Detector0 : UmziOutcome::Detector1;
}

bool detect(int arrivals, double detector_efficiency, double dark_count_prob,
            RandomStream& rng) {
    check_unit_interval(detector_efficiency, "detector_efficiency");
    check_unit_interval(dark_count_prob, "dark_count_prob");
    for (int i = 0; i < arrivals; ++i) {
        if (rng.bernoulli(detector_efficiency)) return true;
    }
    return dark_count_prob > 0.0 && rng.bernoulli(dark_count_prob);
}

double honest_click_prob(int k, double detector_efficiency,
                         double dark_count_prob) {
    const double miss_per_photon = 1.0 - 0.5 * detector_efficiency;
    const double miss = std::pow(miss_per_photon, k) * (1.0 - dark_count_prob);
    return 1.0 - miss;
}

double expected_click_rate(const SourceModel& src, const ChannelModel& ch) {
    const double p_arrive =
        src.heralded ? ch.transmittance_eta
                     : 1.0 - std::exp(-src.mean_photons_mu * ch.transmittance_eta);
    return p_arrive * 0.5 * ch.detector_efficiency;
}

std::vector<QubitState> propagate_photons(StateLabel label,
                                          const SourceModel& src,
                                          const ChannelModel& ch,
                                          RandomStream& rng) {
    const int emitted = sample_photon_number(src, rng);
    const int survived = transmit(emitted, ch.transmittance_eta, rng);
    std::vector<QubitState> photons;
    photons.reserve(static_cast<std::size_t>(survived));
    for (int i = 0; i < survived; ++i) {
        photons.push_back(state_of(apply_channel_error(label, ch.qubit_error_e, rng)));
    }
    return photons;
}

}  // namespace qbc
