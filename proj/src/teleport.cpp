#include "qct/teleport.hpp"

#include <cmath>

#include "qct/error.hpp"

namespace qct {

MessageQubitSpec::MessageQubitSpec(Amplitude a, Amplitude b) {
    const double norm2 = std::norm(a) + std::norm(b);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        fail(errc::zero_vector, "message qubit spec must not be the zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    alpha = a * inv;
    beta = b * inv;
}

std::string to_string(PauliCorrection c) {
    switch (c) {
        case PauliCorrection::Identity: return "I";
        case PauliCorrection::U1_X: return "u1";
        case PauliCorrection::U2_Z: return "u2";
        case PauliCorrection::U3: return "u3";
    }
    return "?";
}

const SingleQubitGate& gate_for(PauliCorrection c) {
    switch (c) {
        case PauliCorrection::U1_X: return kGateU1;
        case PauliCorrection::U2_Z: return kGateU2;
        case PauliCorrection::U3: return kGateU3;
        case PauliCorrection::Identity: break;
    }
    return kGateIdentity;
}

TeleportRecord teleport_one(const MessageQubitSpec& spec, Rng& rng) {
    // Register layout: qubit 0 = message, qubit 1 = Alice's half of the
    // pair, qubit 2 = Bob's half.
    const StateVector joint = tensor(spec.state(), make_bell_pair(BellOutcome::PhiPlus));
    auto [outcome, bob] = bell_measure(joint, 0, 1, rng);
    return TeleportRecord{outcome, std::move(bob), spec};
}

PauliCorrection correction_for(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return PauliCorrection::Identity;
        case BellOutcome::PsiPlus: return PauliCorrection::U1_X;
        case BellOutcome::PhiMinus: return PauliCorrection::U2_Z;
        case BellOutcome::PsiMinus: return PauliCorrection::U3;
    }
    return PauliCorrection::Identity;
}

StateVector apply_correction(const TeleportRecord& record, PauliCorrection correction) {
    return apply_gate(record.bob_state, gate_for(correction), 0);
}

std::vector<TeleportRecord> teleport_batch(const std::vector<MessageQubitSpec>& specs,
                                           Rng& rng, int max_batch) {
    if (specs.empty())
        fail(errc::validation_error, "teleport batch needs at least one message qubit");
    if (static_cast<int>(specs.size()) > max_batch)
        fail(errc::capacity_exceeded,
             "teleport batch of " + std::to_string(specs.size()) +
                 " exceeds limit " + std::to_string(max_batch));
    std::vector<TeleportRecord> records;
    records.reserve(specs.size());
    for (const auto& spec : specs) records.push_back(teleport_one(spec, rng));
    return records;
}

MessageQubitSpec haar_random_spec(Rng& rng) {
    for (;;) {
        const Amplitude alpha{rng.gaussian(), rng.gaussian()};
        const Amplitude beta{rng.gaussian(), rng.gaussian()};
        if (std::norm(alpha) + std::norm(beta) > 1e-12)
            return MessageQubitSpec(alpha, beta);
    }
}

} // namespace qct
