#pragma once

#include <span>
#include <string>
#include <vector>

#include "camoeval/color.hpp"

namespace camoeval {

/// One entry of the published CIEDE2000 verification data.
struct Ciede2000Case {
    LabTriple first;
    LabTriple second;
    double expected;
};

/// The 34 published verification pairs.
std::span<const Ciede2000Case> ciede2000_cases();

struct SelftestResult {
    std::string suite;
    bool passed = false;
    std::string detail;
};

/// Runs the embedded oracle fixtures.
std::vector<SelftestResult> run_selftest();

}  // namespace camoeval
