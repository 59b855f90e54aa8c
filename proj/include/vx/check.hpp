// A single verification record: an identifier, a neutral description of
// which rule was exercised, the printed left and right sides, and whether
// they agreed.  Suites aggregate these into reports.
#pragma once

#include <string>
#include <vector>

namespace vx {

struct CheckResult {
    std::string id;   // stable, unique within a suite
    std::string ref;  // short label of the rule family being checked
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

} // namespace vx
