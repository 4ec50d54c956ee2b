#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qct/rng.hpp"

namespace qct {

using Amplitude = std::complex<double>;

// Tolerances used across the simulation core.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kDegenerateMass = 1e-12;
inline constexpr int kDefaultMaxQubits = 12;

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

std::string to_string(BellOutcome outcome);

// Dense state vector over n qubits in computational-basis order.
// Convention: qubit 0 is the most significant bit of the amplitude index,
// so |q0 q1 ... q_{n-1}> lives at index (q0 << (n-1)) | ... | q_{n-1}.
struct StateVector {
    int num_qubits = 0;
    std::vector<Amplitude> amps{Amplitude{1.0, 0.0}}; // 2^num_qubits entries

    static StateVector basis_state(int num_qubits, std::size_t index);

    std::size_t dim() const { return amps.size(); }
    double squared_norm() const;

    // Bit of `index` that belongs to qubit q under the MSB-first convention.
    int qubit_bit(std::size_t index, int q) const {
        return static_cast<int>((index >> (num_qubits - 1 - q)) & 1u);
    }
};

struct SingleQubitGate {
    Amplitude m00, m01, m10, m11;

    bool is_unitary(double tol = kNormTolerance) const;
};

// I, u1 (bit flip), u2 (phase flip), u3 = |0><1| - |1><0|.
extern const SingleQubitGate kGateIdentity;
extern const SingleQubitGate kGateU1;
extern const SingleQubitGate kGateU2;
extern const SingleQubitGate kGateU3;

// (alpha|0> + beta|1>) renormalized. Throws zero_vector if both vanish.
StateVector make_message_qubit(Amplitude alpha, Amplitude beta);

StateVector make_bell_pair(BellOutcome kind);

// Kronecker product; a's qubits become the leading qubits of the result.
// Throws capacity_exceeded beyond max_qubits.
StateVector tensor(const StateVector& a, const StateVector& b,
                   int max_qubits = kDefaultMaxQubits);

StateVector apply_gate(const StateVector& state, const SingleQubitGate& gate, int target);

// Projective measurement of `target` in the analyzer basis
//   bit 0:  cos(theta/2)|0> + sin(theta/2)|1>
//   bit 1: -sin(theta/2)|0> + cos(theta/2)|1>
// Half-angle convention: a singlet measured at equal angles anticorrelates
// exactly, and E(a, b) = -cos(a - b).
std::pair<int, StateVector> measure_angle(const StateVector& state, int target,
                                          double theta, Rng& rng);

// Bell-basis measurement of the pair (q1, q2). Samples one of the four
// outcomes from the Born probabilities, collapses, and returns the remaining
// register with the measured pair removed (surviving qubits keep their
// relative order).
std::pair<BellOutcome, StateVector> bell_measure(const StateVector& state,
                                                 int q1, int q2, Rng& rng);

// Same measurement but the collapsed pair stays in the register. Exists so
// tests can check collapse idempotence; the protocol path uses bell_measure.
std::pair<BellOutcome, StateVector> bell_measure_in_place(const StateVector& state,
                                                          int q1, int q2, Rng& rng);

// The four Bell projector probabilities for the pair (q1, q2), indexed by
// BellOutcome. Sums to 1 for a normalized state.
std::array<double, 4> bell_probabilities(const StateVector& state, int q1, int q2);

Amplitude inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2. Insensitive to global phase. Throws dimension_mismatch.
double fidelity(const StateVector& a, const StateVector& b);

} // namespace qct
