#include "qct/demo.hpp"

#include <sstream>

namespace qct {

DemoResult run_demo() {
    DemoResult demo;
    demo.outcomes = {BellOutcome::PsiPlus, BellOutcome::PhiMinus,
                     BellOutcome::PsiMinus};

    Announcement codes;
    for (auto outcome : demo.outcomes) codes.codes.push_back(encode(outcome));
    demo.encoded = to_string(codes);

    const AgentKey charlie{"Charlie", {1}};
    const AgentKey dick{"Dick", {0}};

    const Announcement step1 = encrypt(codes, {charlie});
    demo.after_charlie = to_string(step1);

    const Announcement step2 = encrypt(step1, {dick});
    demo.after_dick = to_string(step2);
    demo.announced = demo.after_dick;

    const Announcement decoded = decrypt(step2, {charlie, dick});
    demo.decoded = to_string(decoded);
    return demo;
}

std::string demo_text(const DemoResult& result) {
    std::ostringstream out;
    out << "controlled teleportation, worked example (m = 3, agents Charlie and Dick)\n";
    out << "Bell outcomes:                 ";
    for (std::size_t i = 0; i < result.outcomes.size(); ++i)
        out << (i ? " " : "") << to_string(result.outcomes[i]);
    out << "\n";
    out << "encoded outcomes:              " << result.encoded << "\n";
    out << "after Charlie's key '1':       " << result.after_charlie << "\n";
    out << "after Dick's key '0':          " << result.after_dick << "\n";
    out << "public announcement:           " << result.announced << "\n";
    out << "decrypted with revealed keys:  " << result.decoded << "\n";
    return out.str();
}

} // namespace qct
