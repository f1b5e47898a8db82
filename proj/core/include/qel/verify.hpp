#ifndef QEL_VERIFY_HPP
#define QEL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qel {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // measured value / threshold, human readable
};

// Runs the full invariant suite of every module. Deterministic given `seed`.
std::vector<CheckResult> run_verification(std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

// Fixed-width PASS/FAIL table plus a one-line summary; byte-stable for a
// fixed seed.
std::string verification_table(const std::vector<CheckResult>& results);

} // namespace qel

#endif
