#include <algorithm>
#include <vector>

#include <doctest.h>

#include "qct/announce.hpp"
#include "qct/error.hpp"

using namespace qct;

namespace {

AgentKey key1(const std::string& id, std::uint8_t bit) { return {id, {bit}}; }

} // namespace

TEST_CASE("encode is the fixed bijection") {
    CHECK(encode(BellOutcome::PhiPlus) == 0);
    CHECK(encode(BellOutcome::PhiMinus) == 1);
    CHECK(encode(BellOutcome::PsiPlus) == 2);
    CHECK(encode(BellOutcome::PsiMinus) == 3);
    CHECK(code_to_string(encode(BellOutcome::PsiPlus)) == "10");
    CHECK(code_to_string(encode(BellOutcome::PhiMinus)) == "01");
    CHECK(code_to_string(encode(BellOutcome::PhiPlus)) == "00");
    for (std::uint8_t c = 0; c < 4; ++c) CHECK(encode(decode(c)) == c);
    CHECK_THROWS_AS(decode(4), Error);
}

TEST_CASE("the eight addition rules hold verbatim") {
    const char* zero_key[4] = {"00", "01", "10", "11"};
    const char* one_key[4] = {"01", "10", "11", "00"};
    for (std::uint8_t c = 0; c < 4; ++c) {
        const Announcement in{{c}};
        CHECK(code_to_string(encrypt(in, {key1("k", 0)}).codes[0]) == zero_key[c]);
        CHECK(code_to_string(encrypt(in, {key1("k", 1)}).codes[0]) == one_key[c]);
    }
}

TEST_CASE("worked example: key '1' shifts the announcement") {
    const Announcement codes{{encode(BellOutcome::PsiPlus), encode(BellOutcome::PhiMinus),
                              encode(BellOutcome::PsiMinus)}};
    CHECK(to_string(codes) == "10 01 11");
    const Announcement announced = encrypt(codes, {key1("Charlie", 1)});
    CHECK(to_string(announced) == "11 10 00");
    const Announcement decoded = decrypt(announced, {key1("Charlie", 1)});
    CHECK(to_string(decoded) == "10 01 11");
}

TEST_CASE("all-zero keys change nothing; two '1' keys shift by two") {
    const Announcement codes{{3}};
    CHECK(encrypt(codes, {key1("a", 0), key1("b", 0)}) == codes);
    const Announcement shifted = encrypt(codes, {key1("a", 1), key1("b", 1)});
    CHECK(code_to_string(shifted.codes[0]) == "01");
}

TEST_CASE("exhaustive round trip, m <= 3, up to 4 single-bit keys") {
    for (int m = 1; m <= 3; ++m) {
        std::vector<Announcement> all;
        const int total = 1 << (2 * m);
        for (int v = 0; v < total; ++v) {
            Announcement a;
            for (int j = 0; j < m; ++j)
                a.codes.push_back(static_cast<OutcomeCode>((v >> (2 * j)) & 3));
            all.push_back(a);
        }
        for (int agents = 0; agents <= 4; ++agents) {
            for (int mask = 0; mask < (1 << agents); ++mask) {
                std::vector<AgentKey> keys;
                for (int a = 0; a < agents; ++a)
                    keys.push_back(key1("a" + std::to_string(a),
                                        static_cast<std::uint8_t>((mask >> a) & 1)));
                for (const auto& codes : all)
                    CHECK(decrypt(encrypt(codes, keys), keys) == codes);
            }
        }
    }
}

TEST_CASE("encryption is invariant under key permutation") {
    const Announcement codes{{0, 1, 2, 3, 2}};
    std::vector<AgentKey> keys{key1("a", 1), key1("b", 0), key1("c", 1), key1("d", 1)};
    const Announcement reference = encrypt(codes, keys);
    std::sort(keys.begin(), keys.end(),
              [](const AgentKey& x, const AgentKey& y) { return x.agent_id > y.agent_id; });
    CHECK(encrypt(codes, keys) == reference);
}

TEST_CASE("missing keys corrupt every position by the same offset") {
    const Announcement codes{{0, 1, 2, 3}};
    const std::vector<AgentKey> all{key1("a", 1), key1("b", 1), key1("c", 1)};
    const Announcement announced = encrypt(codes, all);

    // Reveal only 'a': missing bits sum to 2, every position off by 2.
    const Announcement partial = decrypt(announced, {all[0]});
    for (std::size_t j = 0; j < codes.size(); ++j)
        CHECK(partial.codes[j] == (codes.codes[j] + 2) % 4);

    // Exhaustive over the mod-4 algebra: every (code, shift) pair lands
    // where modular addition says it must.
    for (int code = 0; code < 4; ++code)
        for (int hidden = 0; hidden < 4; ++hidden) {
            std::vector<AgentKey> keys;
            for (int i = 0; i < hidden; ++i) keys.push_back(key1("h" + std::to_string(i), 1));
            const Announcement in{{static_cast<OutcomeCode>(code)}};
            const Announcement out = decrypt(encrypt(in, keys), {});
            CHECK(out.codes[0] == (code + hidden) % 4);
            if (hidden % 4 != 0) CHECK(out.codes[0] != in.codes[0]);
        }
}

TEST_CASE("four colluding '1' bits cancel: net shift zero is reported honestly") {
    const std::vector<AgentKey> four{key1("a", 1), key1("b", 1), key1("c", 1),
                                     key1("d", 1)};
    CHECK(net_shift(four, 0, 5) == 0);
    const Announcement codes{{0, 1, 2, 3, 0}};
    CHECK(encrypt(codes, four) == codes);
}

TEST_CASE("per-position keys shift positions independently") {
    const Announcement codes{{0, 0, 0, 0}};
    const AgentKey per_position{"a", {1, 0, 1, 1}};
    const Announcement out = encrypt(codes, {per_position});
    CHECK(out.codes == std::vector<OutcomeCode>{1, 0, 1, 1});
    CHECK(net_shift({per_position}, 0, 4) == 1);
    CHECK(net_shift({per_position}, 1, 4) == 0);
    CHECK(decrypt(out, {per_position}) == codes);
}

TEST_CASE("key length mismatch is rejected") {
    const Announcement codes{{0, 1, 2}};
    const AgentKey bad{"a", {1, 0}}; // neither 1 nor m=3
    CHECK_THROWS_AS(encrypt(codes, {bad}), Error);
    const AgentKey nonbit{"a", {2}};
    CHECK_THROWS_AS(encrypt(codes, {nonbit}), Error);
}

TEST_CASE("corrections_from composes decode with the correction map") {
    const Announcement codes{{0, 1, 2, 3}};
    const auto corrections = corrections_from(codes);
    REQUIRE(corrections.size() == 4);
    CHECK(corrections[0] == PauliCorrection::Identity);
    CHECK(corrections[1] == PauliCorrection::U2_Z);
    CHECK(corrections[2] == PauliCorrection::U1_X);
    CHECK(corrections[3] == PauliCorrection::U3);
}
