#include "qct/announce.hpp"

#include "qct/error.hpp"

namespace qct {

namespace {

void check_keys(const std::vector<AgentKey>& keys, std::size_t length) {
    for (const auto& key : keys) {
        if (key.bits.size() != 1 && key.bits.size() != length)
            fail(errc::key_length_mismatch,
                 "key for agent '" + key.agent_id + "' has " +
                     std::to_string(key.bits.size()) + " bits, expected 1 or " +
                     std::to_string(length));
        for (auto b : key.bits)
            if (b > 1)
                fail(errc::key_length_mismatch,
                     "key bits for agent '" + key.agent_id + "' must be 0 or 1");
    }
}

Announcement shift_codes(const Announcement& codes, const std::vector<AgentKey>& keys,
                         int direction) {
    check_keys(keys, codes.size());
    Announcement out = codes;
    for (std::size_t j = 0; j < out.codes.size(); ++j) {
        int shift = 0;
        for (const auto& key : keys)
            shift += key.bits.size() == 1 ? key.bits[0] : key.bits[j];
        out.codes[j] = static_cast<OutcomeCode>(
            ((out.codes[j] + direction * shift) % 4 + 4) % 4);
    }
    return out;
}

} // namespace

OutcomeCode encode(BellOutcome outcome) {
    return static_cast<OutcomeCode>(outcome);
}

BellOutcome decode(OutcomeCode code) {
    if (code > 3)
        fail(errc::validation_error, "outcome code out of range");
    return static_cast<BellOutcome>(code);
}

std::string code_to_string(OutcomeCode code) {
    std::string s(2, '0');
    s[0] = (code & 2) ? '1' : '0';
    s[1] = (code & 1) ? '1' : '0';
    return s;
}

std::string to_string(const Announcement& announcement) {
    std::string out;
    for (std::size_t j = 0; j < announcement.codes.size(); ++j) {
        if (j) out += ' ';
        out += code_to_string(announcement.codes[j]);
    }
    return out;
}

int net_shift(const std::vector<AgentKey>& keys, std::size_t position,
              std::size_t length) {
    check_keys(keys, length);
    int total = 0;
    for (const auto& key : keys)
        total += key.bits.size() == 1 ? key.bits[0] : key.bits[position];
    return total % 4;
}

Announcement encrypt(const Announcement& codes, const std::vector<AgentKey>& keys) {
    return shift_codes(codes, keys, +1);
}

Announcement decrypt(const Announcement& codes, const std::vector<AgentKey>& known_keys) {
    return shift_codes(codes, known_keys, -1);
}

std::vector<PauliCorrection> corrections_from(const Announcement& codes) {
    std::vector<PauliCorrection> out;
    out.reserve(codes.size());
    for (auto code : codes.codes) out.push_back(correction_for(decode(code)));
    return out;
}

} // namespace qct
