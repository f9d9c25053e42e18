#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tomo::verify {

struct Options {
    std::vector<int> sizes{1, 2};
    std::uint64_t seed = 20240611;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> details;
};

// volume, orthogonality, conjugation, nondeg-matrix, cg-tables, lm-table,
// dark-block, l2-block, round-trip, prefactor
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const Options& opt = {});

}  // namespace tomo::verify
