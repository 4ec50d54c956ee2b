#include "qct/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "qct/announce.hpp"
#include "qct/ekert91.hpp"
#include "qct/teleport.hpp"

namespace qct {

namespace {

bool run_check(std::ostream& out, const std::string& name,
               const std::function<bool()>& check) {
    bool ok = false;
    try {
        ok = check();
    } catch (...) {
        ok = false;
    }
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    return ok;
}

bool round_trip_identity() {
    Rng rng(20250809);
    for (int i = 0; i < 50; ++i) {
        const MessageQubitSpec spec = haar_random_spec(rng);
        const TeleportRecord record = teleport_one(spec, rng);
        const StateVector restored =
            apply_correction(record, correction_for(record.outcome));
        if (std::abs(fidelity(restored, spec.state()) - 1.0) > 1e-9) return false;
    }
    return true;
}

bool encryption_table() {
    const AgentKey zero{"k", {0}};
    const AgentKey one{"k", {1}};
    for (std::uint8_t code = 0; code < 4; ++code) {
        const Announcement in{{code}};
        if (encrypt(in, {zero}).codes[0] != code) return false;
        if (encrypt(in, {one}).codes[0] != (code + 1) % 4) return false;
    }
    return true;
}

bool codec_round_trip() {
    for (std::uint8_t a = 0; a < 4; ++a)
        for (std::uint8_t b = 0; b < 4; ++b)
            for (int k1 = 0; k1 < 2; ++k1)
                for (int k2 = 0; k2 < 2; ++k2) {
                    const Announcement in{{a, b}};
                    const std::vector<AgentKey> keys{
                        {"x", {static_cast<std::uint8_t>(k1)}},
                        {"y", {static_cast<std::uint8_t>(k2)}}};
                    if (!(decrypt(encrypt(in, keys), keys) == in)) return false;
                }
    return true;
}

bool chsh_ideal() {
    Rng rng(424242);
    const EveModel none;
    const auto session = e91::run_session(20000, none, rng);
    return std::abs(std::abs(session.chsh_s) - 2.0 * std::sqrt(2.0)) < 0.15 &&
           session.agreement == 1.0 && !session.compromised;
}

} // namespace

bool selftest(std::ostream& out) {
    bool ok = true;
    ok &= run_check(out, "teleport round-trip identity (50 random qubits)",
                    round_trip_identity);
    ok &= run_check(out, "mod-4 encryption table", encryption_table);
    ok &= run_check(out, "codec round trip (exhaustive, 2 codes x 2 keys)",
                    codec_round_trip);
    ok &= run_check(out, "ideal CHSH value (20000 pairs)", chsh_ideal);
    return ok;
}

} // namespace qct
