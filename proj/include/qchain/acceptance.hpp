#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qchain {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full verification suite, printing one pass/fail line per
/// criterion.  Returns true iff every criterion passed.
bool run_acceptance(std::ostream& os, std::vector<CriterionResult>* results = nullptr);

}  // namespace qchain
