#pragma once

#include <array>
#include <complex>
#include <string>

namespace qbc {

class RandomStream;

// Send labels of the four BB84 states plus the four outcomes of the two
// intermediate (Breidbart) bases.
enum class StateLabel { X, Y, L, R, V1, U1, V2, U2 };

// Measurement bases: the two BB84 bases and the two Breidbart bases.
// XY = {|X>,|Y>}, LR = {|L>,|R>}, B1 = {|V1>,|U1>}, B2 = {|V2>,|U2>}.
enum class MeasBasis { XY, LR, B1, B2 };

// A pure qubit state in the time-bin basis {|A>, |B>} (short-arm and
// long-arm amplitudes). Every named state is represented here; the
// polarization picture and the time-bin picture coincide under this
// convention. Global phase is not normalized away — only squared overlaps
// are contractual.
struct QubitState {
    std::complex<double> amp_a{0.0, 0.0};
    std::complex<double> amp_b{0.0, 0.0};

    double norm_sq() const { return std::norm(amp_a) + std::norm(amp_b); }
};

// Exact amplitudes of a named state.
QubitState state_of(StateLabel label);

// The ordered pair of labels spanning a basis. Index 0 is the label the
// "0" detector reports (X, L, V1, V2), index 1 the "1" detector.
std::array<StateLabel, 2> basis_labels(MeasBasis basis);

// The basis a label belongs to.
MeasBasis basis_of(StateLabel label);

// Position of a label within its own basis: X,L,V1,V2 -> 0; Y,R,U1,U2 -> 1.
int detector_index(StateLabel label);

// The other label of the same basis.
StateLabel orthogonal(StateLabel label);

bool is_bb84(StateLabel label);

// Born probability |<s|t>|^2. Symmetric. Throws std::invalid_argument if
// either state's norm deviates from 1 by more than 1e-9.
double overlap_prob(const QubitState& s, const QubitState& t);

// Demolition measurement of s in the given basis: returns one of the two
// basis labels sampled with Born probabilities. No post-measurement state.
StateLabel measure(const QubitState& s, MeasBasis basis, RandomStream& rng);

std::string to_string(StateLabel label);
std::string to_string(MeasBasis basis);
StateLabel label_from_string(const std::string& s);
MeasBasis basis_from_string(const std::string& s);

}  // namespace qbc
