// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace simlearn {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast invariant and oracle checks over every module.
std::vector<CheckResult> run_validation_suite();

}  // namespace simlearn
