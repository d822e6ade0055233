#pragma once

// Plain-data analysis report. Everything here is self-contained (no module
// handles) so a report parsed from disk compares equal to the one written.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opmod/algebra.hpp"

namespace opmod {

enum class Verdict { certified, rejected, exhausted_search };

std::string to_string(Verdict v);
/// Throws InvalidInput for an unknown name.
Verdict verdict_from_string(const std::string& name);

struct WitnessSummary {
    std::vector<double> u;  // one scalar per algebra block
    std::vector<double> w;
    double residual = 0.0;
    double scale = 1.0;
    double tolerance = 0.0;
    double fresh_sample_residual = 0.0;
    std::size_t fresh_samples = 0;
    /// Largest |lambda - lambda'| after re-solving on a permuted, rescaled spanning family.
    double permutation_gap = 0.0;
    bool operator==(const WitnessSummary&) const = default;
};

struct RejectionSummary {
    std::vector<Complex> lambdas;
    std::vector<double> block_residuals;
    double residual = 0.0;
    double scale = 1.0;
    std::string reason;
    bool operator==(const RejectionSummary&) const = default;
};

struct ViolationSummary {
    std::vector<Matrix> x;  // module element blocks
    std::vector<Matrix> y;
    double inner_norm = 0.0;
    double violation = 0.0;
    std::size_t trial = 0;
    /// |J(x)^* J(y)| in the domain linking algebra and |J(Phi x)^* J(Phi y)| in the image one.
    double linking_before = 0.0;
    double linking_after = 0.0;
    bool operator==(const ViolationSummary& o) const;
};

struct SearchSummary {
    std::size_t trials = 0;
    double max_violation = 0.0;
    bool operator==(const SearchSummary&) const = default;
};

struct NormSummary {
    double map_norm_sq = 0.0;
    double u_norm = 0.0;
    double gap = 0.0;  // u_norm - map_norm_sq
    bool operator==(const NormSummary&) const = default;
};

struct DecompositionSummary {
    double isometry_residual = 0.0;
    double factorization_residual = 0.0;
    double adjoint_residual = 0.0;
    std::size_t kernel_dimension = 0;
    std::size_t kernel_dimension_rw = 0;
    bool operator==(const DecompositionSummary&) const = default;
};

struct IdealSummary {
    std::vector<std::size_t> domain;
    std::vector<std::size_t> image;
    std::vector<std::size_t> witness;
    bool image_equals_witness = false;
    bool image_within_domain = false;
    bool operator==(const IdealSummary&) const = default;
};

struct InjectivitySummary {
    std::size_t kernel_dimension = 0;
    bool injective = false;
    bool surjective = false;  // F_Phi = F
    bool image_ideal_full = false;
    std::optional<bool> full_ideal_consequences;
    double inverse_witness_error = 0.0;
    bool operator==(const InjectivitySummary&) const = default;
};

struct BijectiveSummary {
    bool applicable = false;
    std::string reason;  // why the analysis was refused; empty when applicable
    bool ideals_equal = false;
    bool witness_invertible = false;
    double psi_isometry_residual = 0.0;
    double w_inverse_norm = 0.0;
    bool operator==(const BijectiveSummary&) const = default;
};

struct LinkingSummary {
    std::vector<std::pair<std::string, double>> residuals;
    std::size_t pairs = 0;
    double worst = 0.0;
    bool operator==(const LinkingSummary&) const = default;
};

struct AnalysisReport {
    Verdict verdict = Verdict::rejected;
    std::string provenance;
    std::vector<int> algebra_blocks;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string diagnosis;

    std::optional<WitnessSummary> certificate;
    std::optional<RejectionSummary> rejection;
    std::optional<ViolationSummary> violation;
    std::optional<SearchSummary> search;
    std::optional<NormSummary> norms;
    std::optional<DecompositionSummary> decomposition;
    std::optional<IdealSummary> ideals;
    std::optional<InjectivitySummary> injectivity;
    std::optional<BijectiveSummary> bijective;
    std::optional<LinkingSummary> linking;

    std::vector<std::string> notes;
    double timing_ms = 0.0;

    bool operator==(const AnalysisReport&) const = default;
};

/// Throws ValidationError when the payload does not match the verdict.
void validate_report(const AnalysisReport& report);

}  // namespace opmod
