#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tistar::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // worst residual and where it occurred
};

// Runs the seven acceptance criteria in order. When progress is non-null a
// PASS/FAIL line is printed per criterion as it completes.
std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

}  // namespace tistar::acceptance
