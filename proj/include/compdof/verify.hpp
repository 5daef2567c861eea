#pragma once

// Verification harness: the finite-K checks behind the library's headline
// facts, runnable as `compdof verify` or via the acceptance test binary.
// Every check is deterministic given (seed, trials).

#include <cstdint>
#include <string>
#include <vector>

namespace compdof {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string observed;
    double elapsed_seconds = 0.0;
};

enum class VerifySuite { Bounds, Certificates, Inequalities, Expanders, All };

struct VerifyOptions {
    std::uint64_t seed = 0;
    int trials = 0;  // 0 keeps each check's own default trial count
};

std::vector<CheckResult> verify_paper(VerifySuite suite, const VerifyOptions& options = {});

VerifySuite suite_from_string(const std::string& name);
std::string to_string(VerifySuite suite);

}  // namespace compdof
