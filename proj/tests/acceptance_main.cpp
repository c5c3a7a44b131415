// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit on
// any failure.

#include "acceptance/acceptance.hpp"

#include <iostream>

int main() {
    auto results = tistar::acceptance::run_all(&std::cout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::cout << (all ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES PRESENT") << std::endl;
    return all ? 0 : 1;
}
