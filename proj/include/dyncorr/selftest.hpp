#pragma once

#include <cstdint>
#include <ostream>

namespace dyncorr {

// Embedded invariant suite: measure properties, Choi factorization of
// product channels, the maximal-correlation pool, and integrator oracles.
// Prints one PASS/FAIL line per check; returns the number of failures.
// The seed varies the random trials, never the verdict.
int run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace dyncorr
