#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace homoglab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured values against their pinned tolerances
    double seconds = 0.0;
};

constexpr int criterion_count = 10;

// Runs the selected criteria (all when `only` is empty). Never throws for a
// failing check: a thrown library error marks that criterion failed.
std::vector<CriterionResult> run(const std::vector<int>& only = {}, std::uint64_t seed = 20240601);

// "[PASS] 3 coupled-projection  ...  (12.1 s)"
std::string format(const CriterionResult& r);

}  // namespace homoglab::acceptance
