#pragma once

#include <iosfwd>

namespace qct {

// Built-in invariant suite: teleportation round trip, the mod-4 encryption
// table, the codec round trip, and the ideal CHSH value. Prints one
// pass/fail line per check to `out`; returns true iff everything passed.
bool selftest(std::ostream& out);

} // namespace qct
