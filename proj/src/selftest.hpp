#ifndef NACLOG_SELFTEST_HPP
#define NACLOG_SELFTEST_HPP

#include <string>
#include <vector>

namespace naclog {

struct SelftestResult {
    bool ok = true;
    std::vector<std::string> lines;  // one per suite, "ok - <name>" or "FAIL - <name>: <why>"
};

// Runs the library invariant suites at desk scale: Galois and nucleus laws,
// frame rule correspondence, completion class membership, embedding checks,
// the star-extension battery, serialization round trips, and a small
// prover/refuter cross-check corpus.
SelftestResult run_selftest(bool thorough);

}  // namespace naclog

#endif
