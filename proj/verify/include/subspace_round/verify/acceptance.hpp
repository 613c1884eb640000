#pragma once

#include "subspace_round/verify/suites.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace subspace_round::verify {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    std::vector<PropertyResult> properties;
    std::string note; // extra failure reason, e.g. a runtime budget
};

/// Runs the ten acceptance criteria at their stated sizes and tolerances.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 1);

} // namespace subspace_round::verify
