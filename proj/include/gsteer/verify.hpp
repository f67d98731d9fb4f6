#pragma once

#include <string>
#include <vector>

namespace gsteer {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Module invariant checks on small fixed instances with fixed seeds.
std::vector<CheckResult> run_invariant_suite();

} // namespace gsteer
