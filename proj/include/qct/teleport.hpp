#pragma once

#include <string>
#include <vector>

#include "qct/statevec.hpp"

namespace qct {

// One message qubit alpha|0> + beta|1>, normalized on construction.
struct MessageQubitSpec {
    Amplitude alpha;
    Amplitude beta;

    MessageQubitSpec(Amplitude a, Amplitude b);

    StateVector state() const { return make_message_qubit(alpha, beta); }
};

enum class PauliCorrection { Identity = 0, U1_X = 1, U2_Z = 2, U3 = 3 };

std::string to_string(PauliCorrection c);

const SingleQubitGate& gate_for(PauliCorrection c);

// Result of teleporting one message qubit: the sampled Bell outcome and
// Bob's qubit before any correction is applied.
struct TeleportRecord {
    BellOutcome outcome;
    StateVector bob_state; // 1 qubit
    MessageQubitSpec reference;
};

inline constexpr int kDefaultMaxBatch = 64;

// Builds (alpha|0> + beta|1>) (x) phi+, Bell-measures the message qubit
// against Alice's half of the pair, and leaves Bob's qubit in the branch
// selected by the outcome. Each outcome occurs with probability 1/4.
TeleportRecord teleport_one(const MessageQubitSpec& spec, Rng& rng);

// The unique correction that maps each outcome branch back onto the message
// state: phi+ -> I, psi+ -> u1, phi- -> u2, psi- -> u3.
PauliCorrection correction_for(BellOutcome outcome);

StateVector apply_correction(const TeleportRecord& record, PauliCorrection correction);

// Independent teleportations, one Bell pair per message qubit.
std::vector<TeleportRecord> teleport_batch(const std::vector<MessageQubitSpec>& specs,
                                           Rng& rng, int max_batch = kDefaultMaxBatch);

// Uniform draw from the single-qubit state space: two standard complex
// Gaussians, then normalization.
MessageQubitSpec haar_random_spec(Rng& rng);

} // namespace qct
