#pragma once

// Text documents for instances and analysis reports. Both carry "schema": 1,
// reject unknown fields and round-trip doubles exactly. Complex numbers are
// [re, im]; matrices are row-major nested arrays; A-elements and amplified
// elements are per-block matrix lists with row index s*n_b + t.

#include <filesystem>
#include <string>

#include "opmod/instances.hpp"
#include "opmod/report.hpp"

namespace opmod {

inline constexpr int kSchemaVersion = 1;

std::string instance_to_string(const InstanceBundle& bundle);
/// Throws ParseError (with byte offset) on malformed text and ValidationError
/// (naming the field) on missing, unknown or inconsistent fields.
InstanceBundle instance_from_string(const std::string& text, const ToleranceProfile& tol = kDefaultTolerances);

void save_instance(const std::filesystem::path& path, const InstanceBundle& bundle);
InstanceBundle load_instance(const std::filesystem::path& path, const ToleranceProfile& tol = kDefaultTolerances);

std::string report_to_string(const AnalysisReport& report);
AnalysisReport report_from_string(const std::string& text);

void save_report(const std::filesystem::path& path, const AnalysisReport& report);
AnalysisReport load_report(const std::filesystem::path& path);

}  // namespace opmod
