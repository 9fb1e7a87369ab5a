#include "qbc/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbc/random.hpp"

namespace qbc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kSinPi8 = std::sin(std::numbers::pi / 8.0);
const double kCosPi8 = std::cos(std::numbers::pi / 8.0);

QubitState superpose(std::complex<double> ca, const QubitState& a,
                     std::complex<double> cb, const QubitState& b) {
    return {ca * a.amp_a + cb * b.amp_a, ca * a.amp_b + cb * b.amp_b};
}

}  // namespace

QubitState state_of(StateLabel label) {
    switch (label) {
        case StateLabel::X: return {kInvSqrt2, kInvSqrt2};
        case StateLabel::Y: return {kInvSqrt2, -kInvSqrt2};
        case StateLabel::L: return {kInvSqrt2, kI * kInvSqrt2};
        case StateLabel::R: return {kInvSqrt2, -kI * kInvSqrt2};
        // The intermediate-basis states are defined by their expansion in
        // {|X>,|Y>} and expanded into {|A>,|B>} from there.
        case StateLabel::V1:
            return superpose(kSinPi8, state_of(StateLabel::X),
                             kI * kCosPi8, state_of(StateLabel::Y));
        case StateLabel::U1:
            return superpose(kCosPi8, state_of(StateLabel::X),
                             -kI * kSinPi8, state_of(StateLabel::Y));
        case StateLabel::V2:
            return superpose(kSinPi8, state_of(StateLabel::X),
                             -kI * kCosPi8, state_of(StateLabel::Y));
        case StateLabel::U2:
            return superpose(kCosPi8, state_of(StateLabel::X),
                             kI * kSinPi8, state_of(StateLabel::Y));
    }
    throw std::invalid_argument("state_of: unknown label");
}

std::array<StateLabel, 2> basis_labels(MeasBasis basis) {
    switch (basis) {
        case MeasBasis::XY: return {StateLabel::X, StateLabel::Y};
        case MeasBasis::LR: return {StateLabel::L, StateLabel::R};
        case MeasBasis::B1: return {StateLabel::V1, StateLabel::U1};
        case MeasBasis::B2: return {StateLabel::V2, StateLabel::U2};
    }
    throw std::invalid_argument("basis_labels: unknown basis");
}

MeasBasis basis_of(StateLabel label) {
    switch (label) {
        case StateLabel::X:
        case StateLabel::Y: return MeasBasis::XY;
        case StateLabel::L:
        case StateLabel::R: return MeasBasis::LR;
        case StateLabel::V1:
        case StateLabel::U1: return MeasBasis::B1;
        case StateLabel::V2:
        case StateLabel::U2: return MeasBasis::B2;
    }
    throw std::invalid_argument("basis_of: unknown label");
}

int detector_index(StateLabel label) {
    switch (label) {
        case StateLabel::X:
        case StateLabel::L:
        case StateLabel::V1:
        case StateLabel::V2: return 0;
        case StateLabel::Y:
        case StateLabel::R:
        case StateLabel::U1:
        case StateLabel::U2: return 1;
    }
    throw std::invalid_argument("detector_index: unknown label");
}

StateLabel orthogonal(StateLabel label) {
    const auto pair = basis_labels(basis_of(label));
    return label == pair[0] ? pair[1] : pair[0];
}

bool is_bb84(StateLabel label) {
    switch (label) {
        case StateLabel::X:
        case StateLabel::Y:
        case StateLabel::L:
        case StateLabel::R: return true;
        default: return false;
    }
}

double overlap_prob(const QubitState& s, const QubitState& t) {
    constexpr double kNormTol = 1e-9;
    if (std::abs(s.norm_sq() - 1.0) > kNormTol ||
        std::abs(t.norm_sq() - 1.0) > kNormTol) {
        throw std::invalid_argument("overlap_prob: state is not unit norm");
    }
    const std::complex<double> inner =
        std::conj(s.amp_a) * t.amp_a + std::conj(s.amp_b) * t.amp_b;
    return std::norm(inner);
}

StateLabel measure(const QubitState& s, MeasBasis basis, RandomStream& rng) {
    const auto labels = basis_labels(basis);
    const double p0 = overlap_prob(state_of(labels[0]), s);
    return rng.uniform() < p0 ? labels[0] : labels[1];
}

std::string to_string(StateLabel label) {
    switch (label) {
        case StateLabel::X: return "X";
        case StateLabel::Y: return "Y";
        case StateLabel::L: return "L";
        case StateLabel::R: return "R";
        case StateLabel::V1: return "V1";
        case StateLabel::U1: return "U1";
        case StateLabel::V2: return "V2";
        case StateLabel::U2: return "U2";
    }
    throw std::invalid_argument("to_string: unknown label");
}

std::string to_string(MeasBasis basis) {
    switch (basis) {
        case MeasBasis::XY: return "XY";
        case MeasBasis::LR: return "LR";
        case MeasBasis::B1: return "B1";
        case MeasBasis::B2: return "B2";
    }
    throw std::invalid_argument("to_string: unknown basis");
}

StateLabel label_from_string(const std::string& s) {
    if (s == "X") return StateLabel::X;
    if (s == "Y") return StateLabel::Y;
    if (s == "L") return StateLabel::L;
    if (s == "R") return StateLabel::R;
    if (s == "V1") return StateLabel::V1;
    if (s == "U1") return StateLabel::U1;
    if (s == "V2") return StateLabel::V2;
    if (s == "U2") return StateLabel::U2;
    throw std::invalid_argument("label_from_string: unknown label '" + s + "'");
}

MeasBasis basis_from_string(const std::string& s) {
    if (s == "XY") return MeasBasis::XY;
    if (s == "LR") return MeasBasis::LR;
    if (s == "B1") return MeasBasis::B1;
    if (s == "B2") return MeasBasis::B2;
    throw std::invalid_argument("basis_from_string: unknown basis '" + s + "'");
}

}  // namespace qbc
