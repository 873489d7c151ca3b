#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qca {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;   // counts, or the first failure
};

constexpr uint64_t kDefaultSeed = 20240611;

// Runs criteria 1..12 in order; writes one PASS/FAIL line per criterion to `log` when given.
std::vector<CriterionResult> run_acceptance(uint64_t seed, std::ostream* log);

} // namespace qca
