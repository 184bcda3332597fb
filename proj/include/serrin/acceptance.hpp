#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace serrin {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;              // the measured quantities behind the verdict
    std::vector<std::string> notes;  // supplementary measurements, not part of the verdict
    double seconds = 0.0;
};

struct AcceptanceOptions {
    int workers = 1;
    std::vector<int> only;  // empty runs all twelve
};

/// Runs the acceptance criteria in order, printing one PASS or FAIL line per
/// criterion to log as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

}  // namespace serrin
