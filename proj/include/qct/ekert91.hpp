#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qct/eve.hpp"
#include "qct/rng.hpp"

namespace qct {
namespace e91 {

// Analyzer angle sets (Ekert's original choice). Alice and the agent pick
// uniformly and independently per pair; the overlap {pi/4, pi/2} carries the
// key, the four CHSH combinations carry the Bell test. Constants are spelled
// to the exact doubles so records can be matched by equality.
inline constexpr std::array<double, 3> kAliceAngles{0.0, 0.78539816339744831,
                                                    1.5707963267948966};
inline constexpr std::array<double, 3> kAgentAngles{0.78539816339744831,
                                                    1.5707963267948966,
                                                    2.3561944901923449};

inline constexpr double kDefaultChshThreshold = 2.3;

struct PairRecord {
    double alice_angle;
    double agent_angle;
    std::uint8_t alice_bit;
    std::uint8_t agent_bit;
    bool eve_touched;
    double eve_angle;       // valid when eve_touched
    std::uint8_t eve_bit;   // valid when eve_touched
};

struct E91Session {
    std::vector<PairRecord> records;
    std::vector<std::uint8_t> sifted_key; // Alice's bits on equal-angle pairs
    double agreement = 0.0;               // match rate vs agent's reconciled bits
    double chsh_s = 0.0;
    bool chsh_valid = false;              // all four CHSH combos populated
    bool compromised = false;
};

// Distributes `num_pairs` singlets, applies the eavesdropper to the agent's
// flying qubit, measures both sides at random analyzer angles, then sifts
// and runs the Bell test. A session with |S| below `chsh_threshold` (or one
// too small to estimate S) is flagged compromised.
E91Session run_session(int num_pairs, const EveModel& eve, Rng& rng,
                       double chsh_threshold = kDefaultChshThreshold);

// Alice's key bits from equal-angle records; also fills `agreement` against
// the agent's reconciled (inverted) bits. Exact anticorrelation makes the
// agreement 1 whenever nobody tampered with the channel.
std::vector<std::uint8_t> sift(E91Session& session);

// S = E(0,pi/4) - E(0,3pi/4) + E(pi/2,pi/4) + E(pi/2,3pi/4) from the
// mismatched-angle records. Throws insufficient_samples if a combination
// has no data.
double chsh(const E91Session& session);

} // namespace e91
} // namespace qct
