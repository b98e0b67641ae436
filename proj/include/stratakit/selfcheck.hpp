#pragma once

#include <string>
#include <vector>

#include "stratakit/config.hpp"

namespace stratakit {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelfcheckOptions {
    std::string filter;  ///< run only checks whose name contains this substring
    unsigned seed = 1;
    Tolerances tol;      ///< numeric tolerances fed to the machinery under test;
                         ///< the pass thresholds themselves are fixed
};

/// The acceptance criteria, one result per criterion (filtered).
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opts = {});

} // namespace stratakit
