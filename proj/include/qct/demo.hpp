#pragma once

#include <string>
#include <vector>

#include "qct/announce.hpp"

namespace qct {

// The two-agent worked example: outcomes (psi+, phi-, psi-) encrypted with
// Charlie's key '1' and Dick's key '0', announced, then decrypted after both
// keys are revealed. Everything is deterministic; tests compare the strings
// verbatim.
struct DemoResult {
    std::vector<BellOutcome> outcomes;
    std::string encoded;        // "10 01 11"
    std::string after_charlie;  // "11 10 00"
    std::string after_dick;     // "11 10 00"
    std::string announced;      // same as after_dick
    std::string decoded;        // back to "10 01 11"
};

DemoResult run_demo();

// Renders the demo as the text the CLI prints.
std::string demo_text(const DemoResult& result);

} // namespace qct
