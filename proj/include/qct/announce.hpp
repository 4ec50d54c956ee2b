#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qct/statevec.hpp"
#include "qct/teleport.hpp"

namespace qct {

// A Bell outcome rendered as a 2-bit classical message, value in 0..3.
using OutcomeCode = std::uint8_t;

// One agent's secret control key. `bits` has length 1 (one control bit
// applied uniformly to every position) or length m (one bit per position).
struct AgentKey {
    std::string agent_id;
    std::vector<std::uint8_t> bits;
};

// The sequence of 2-bit codes Alice publishes, one per message qubit.
struct Announcement {
    std::vector<OutcomeCode> codes;

    std::size_t size() const { return codes.size(); }
    bool operator==(const Announcement&) const = default;
};

// phi+ -> 0 ('00'), phi- -> 1 ('01'), psi+ -> 2 ('10'), psi- -> 3 ('11').
OutcomeCode encode(BellOutcome outcome);
BellOutcome decode(OutcomeCode code);

std::string code_to_string(OutcomeCode code);

// "10 01 11" style rendering used by logs, the demo, and reports.
std::string to_string(const Announcement& announcement);

// Mod-4 key shift contributed by `keys` at position `position`. Single-bit
// keys contribute the same bit at every position.
int net_shift(const std::vector<AgentKey>& keys, std::size_t position,
              std::size_t length);

// Adds each position's key shift mod 4. Throws key_length_mismatch when a
// key is neither a single bit nor one bit per position.
Announcement encrypt(const Announcement& codes, const std::vector<AgentKey>& keys);

// Subtracts the shift of the known keys mod 4. Missing keys contribute
// nothing, so an incomplete key set leaves a uniform residual offset.
Announcement decrypt(const Announcement& codes, const std::vector<AgentKey>& known_keys);

// Decoded code -> Bell outcome -> Bob's correction.
std::vector<PauliCorrection> corrections_from(const Announcement& codes);

} // namespace qct
