#pragma once

// End-to-end analysis of an instance: certify or reject, then run every
// downstream construction the verdict allows and collect the residuals.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opmod/instances.hpp"
#include "opmod/report.hpp"

namespace opmod {

struct AnalysisOptions {
    ToleranceProfile tol = kDefaultTolerances;
    std::size_t budget = 200;        // violation-search trials
    std::uint64_t seed = 0;
    std::size_t samples = 64;        // fresh-sample certificate check
    std::size_t linking_pairs = 10;  // 0 skips the linking verification
};

AnalysisReport analyze(const InstanceBundle& bundle, const AnalysisOptions& options = {});

/// 0 certified, 2 rejected or exhausted.
int exit_code(Verdict verdict) noexcept;

/// Block-structured summary with 6 significant digits.
std::string format_human(const AnalysisReport& report);

struct DegradationRow {
    int grid = 0;
    double w_inverse_norm = 0.0;
    double u_min = 0.0;
    double certification_residual = 0.0;
    double psi_isometry_residual = 0.0;
};

/// Runs a discretized gallery entry (interval-C0-halfopen, interval-C01 or
/// vanishing-at-midpoint) for each grid size. Throws InvalidInput on an empty list.
std::vector<DegradationRow> degradation(const std::string& gallery_base, std::span<const int> grid_sizes,
                                        const ToleranceProfile& tol = kDefaultTolerances);

std::string format_degradation(std::span<const DegradationRow> rows, bool machine);

}  // namespace opmod
