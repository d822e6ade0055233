#pragma once

// Seeded property suites: each invariant reports its worst residual over the
// drawn cases against a fixed threshold.

#include <cstdint>
#include <string>
#include <vector>

#include "opmod/tolerance.hpp"

namespace opmod {

struct InvariantResult {
    std::string suite;
    std::string name;
    double worst = 0.0;
    double threshold = 0.0;
    std::size_t cases = 0;
    bool pass = false;
};

/// core, linking, lemmas or all. Throws InvalidInput for other names.
std::vector<InvariantResult> run_suite(const std::string& suite, std::uint64_t seed, std::size_t samples,
                                       const ToleranceProfile& tol = kDefaultTolerances);

std::vector<std::string> suite_names();

bool all_pass(const std::vector<InvariantResult>& results) noexcept;

/// One line per invariant: PASS/FAIL, name, worst residual, threshold, cases.
std::string format_suite(const std::vector<InvariantResult>& results);

}  // namespace opmod
