#pragma once

#include <ostream>

namespace secagg {

// Runs the invariant suite on the fully enumerable tiny curve: group laws,
// scalar-multiplication oracle, mapping roundtrips, encryption roundtrips,
// homomorphism, identity-proof algebra, MAC behavior, energy-model
// continuity, and a small end-to-end determinism check. Prints one line per
// check to `out` and returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace secagg
