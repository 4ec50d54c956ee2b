#include "qct/ekert91.hpp"

#include <array>
#include <cmath>

#include "qct/error.hpp"
#include "qct/statevec.hpp"

namespace qct {
namespace e91 {

namespace {

// The four CHSH angle combinations and their signs in S. Angles are taken
// verbatim from the shared angle sets so record matching can compare doubles
// exactly.
struct ChshCombo {
    double alice, agent, sign;
};
const std::array<ChshCombo, 4> kChshCombos{{
    {kAliceAngles[0], kAgentAngles[0], +1.0},
    {kAliceAngles[0], kAgentAngles[2], -1.0},
    {kAliceAngles[2], kAgentAngles[0], +1.0},
    {kAliceAngles[2], kAgentAngles[2], +1.0},
}};

} // namespace

E91Session run_session(int num_pairs, const EveModel& eve, Rng& rng,
                       double chsh_threshold) {
    if (num_pairs < 1)
        fail(errc::validation_error, "an E91 session needs at least one pair");

    E91Session session;
    session.records.reserve(num_pairs);

    for (int n = 0; n < num_pairs; ++n) {
        StateVector pair = make_bell_pair(BellOutcome::PsiMinus);

        PairRecord rec{};
        rec.eve_touched = eve.active() && rng.uniform() < eve.intercept_probability;
        if (rec.eve_touched) {
            rec.eve_angle = eve.basis_set[rng.below(
                static_cast<std::uint32_t>(eve.basis_set.size()))];
            auto [bit, collapsed] = measure_angle(pair, 1, rec.eve_angle, rng);
            rec.eve_bit = static_cast<std::uint8_t>(bit);
            pair = std::move(collapsed);
        }

        rec.alice_angle = kAliceAngles[rng.below(3)];
        rec.agent_angle = kAgentAngles[rng.below(3)];

        auto [alice_bit, after_alice] = measure_angle(pair, 0, rec.alice_angle, rng);
        auto [agent_bit, ignored] = measure_angle(after_alice, 1, rec.agent_angle, rng);
        rec.alice_bit = static_cast<std::uint8_t>(alice_bit);
        rec.agent_bit = static_cast<std::uint8_t>(agent_bit);
        session.records.push_back(rec);
    }

    session.sifted_key = sift(session);
    try {
        session.chsh_s = chsh(session);
        session.chsh_valid = true;
    } catch (const Error&) {
        session.chsh_s = 0.0;
        session.chsh_valid = false;
    }
    session.compromised = !session.chsh_valid ||
                          std::abs(session.chsh_s) < chsh_threshold ||
                          session.sifted_key.empty();
    return session;
}

std::vector<std::uint8_t> sift(E91Session& session) {
    std::vector<std::uint8_t> key;
    long matches = 0;
    for (const auto& rec : session.records) {
        if (rec.alice_angle != rec.agent_angle) continue;
        key.push_back(rec.alice_bit);
        // Singlet anticorrelation: the agent reconciles by inverting his bit.
        if (rec.alice_bit == 1 - rec.agent_bit) ++matches;
    }
    session.agreement = key.empty() ? 0.0
                                    : static_cast<double>(matches) /
                                          static_cast<double>(key.size());
    return key;
}

double chsh(const E91Session& session) {
    double s = 0.0;
    for (const auto& combo : kChshCombos) {
        long count = 0;
        long sum = 0;
        for (const auto& rec : session.records) {
            if (rec.alice_angle != combo.alice || rec.agent_angle != combo.agent)
                continue;
            ++count;
            sum += (rec.alice_bit == rec.agent_bit) ? 1 : -1;
        }
        if (count == 0)
            fail(errc::insufficient_samples,
                 "no records for CHSH combination (" + std::to_string(combo.alice) +
                     ", " + std::to_string(combo.agent) + ")");
        s += combo.sign * static_cast<double>(sum) / static_cast<double>(count);
    }
    return s;
}

} // namespace e91
} // namespace qct
