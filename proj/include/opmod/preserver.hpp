#pragma once

// Certification of orthogonality preserving module maps. A map Phi: E -> F is
// a preserver exactly when <Phi x, Phi y> = u <x, y> for a (unique) positive
// central u supported on I_E; extract_witness solves for u on a basis of E and
// find_violating_pair searches for an orthogonal pair Phi fails to keep orthogonal.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "opmod/hilbert_module.hpp"

namespace opmod {

struct PreserverCertificate {
    ModuleMap map;
    CentralPositive u;
    CentralPositive w;  // u^{1/2}
    /// max over basis pairs of |<Phi b_i, Phi b_j> - u <b_i, b_j>|.
    double residual = 0.0;
    /// max(1, max |H| * max lambda): the residual is accepted against tolerance * scale.
    double scale = 1.0;
    double tolerance = 0.0;
    /// Per algebra block: the least-squares problem had a nonzero design (always true on I_E).
    std::vector<bool> block_determined;
};

struct NotPreserver {
    /// Unclamped least-squares solutions, one per block (zero off I_E).
    std::vector<Complex> lambdas;
    std::vector<double> block_residuals;
    double residual = 0.0;
    double scale = 1.0;
    std::string reason;
};

using WitnessOutcome = std::variant<PreserverCertificate, NotPreserver>;

/// Solves <Phi b_i, Phi b_j> = lambda <b_i, b_j> blockwise in the least-squares
/// sense over the complex basis of E. Throws InvalidInput if tol <= 0.
WitnessOutcome extract_witness(const ModuleMap& phi, double tol = kDefaultTolerances.certification);

/// Same, over an arbitrary spanning family of E (used to check basis independence).
WitnessOutcome extract_witness(const ModuleMap& phi, double tol, std::span<const ModuleElement> spanning);

bool is_certified(const WitnessOutcome& outcome) noexcept;
/// Throws PreconditionError if the outcome is a rejection.
const PreserverCertificate& certificate_of(const WitnessOutcome& outcome);

struct SampleResidual {
    /// max |<Phi x, Phi y> - u <x, y>| / (|x| |y|) over the drawn pairs.
    double max_residual = 0.0;
    std::size_t samples = 0;
};

/// Fresh-sample check of <Phi x, Phi y> = u <x, y>. Half of the pairs use y = x.
SampleResidual verify_certificate(const ModuleMap& phi, const CentralPositive& u, std::size_t samples,
                                  std::uint64_t seed);

struct ViolationWitness {
    ModuleElement x;
    ModuleElement y;
    double inner_norm = 0.0;  // |<x, y>|
    double violation = 0.0;   // |<Phi x, Phi y>|
    std::size_t trial = 0;
};

struct Exhausted {
    std::size_t trials = 0;
    /// Largest per-trial operator norm of y -> <Phi x, Phi y> on {y : <x, y> = 0}.
    double max_violation = 0.0;
};

using SearchOutcome = std::variant<ViolationWitness, Exhausted>;

/// Randomized over x, exact per x: restricts y -> <Phi x, Phi y> to the
/// orthogonal complement of x and takes its operator norm. x is drawn with
/// deficient rank on each block so the complement is nontrivial.
SearchOutcome find_violating_pair(const ModuleMap& phi, double tol, std::size_t trial_budget, std::uint64_t seed);

struct Decomposition {
    CentralPositive w;
    HilbertModule ew;         // closure of E w
    HilbertModule image;      // F_Phi
    ModuleMap theta;          // Ew -> F_Phi, isometric
    ModuleMap phi0;           // Phi with codomain F_Phi
    ModuleMap phi0_adjoint;   // R_w o Theta^{-1} : F_Phi -> E
    double isometry_residual = 0.0;      // max over basis pairs of |<Theta z, Theta z'> - <z, z'>|
    double factorization_residual = 0.0; // |Phi - Theta o R_w|
    double adjoint_residual = 0.0;       // |R_w o Theta^{-1} - Phi_0^*|
    std::size_t kernel_dimension = 0;    // dim ker Phi
    std::size_t kernel_dimension_rw = 0; // dim ker R_w
};

/// Phi = Theta o R_w. Throws InternalInconsistency when dim ker Phi != dim ker R_w.
Decomposition decompose(const ModuleMap& phi, const PreserverCertificate& cert,
                        const ToleranceProfile& tol = kDefaultTolerances);

struct IdealCheck {
    IdealDescriptor domain_ideal;   // I_E
    IdealDescriptor image_ideal;    // I_{F_Phi}
    IdealDescriptor witness_ideal;  // support(u) within I_E
    bool image_equals_witness = false;
    bool image_within_domain = false;
};

IdealCheck image_ideal_check(const ModuleMap& phi, const PreserverCertificate& cert,
                             const ToleranceProfile& tol = kDefaultTolerances);

struct InjectivityReport {
    std::size_t kernel_dimension = 0;
    bool injective = false;
    /// Witness of Phi^{-1}: F_Phi -> E, extracted afresh (injective maps only).
    std::optional<CentralPositive> inverse_witness;
    /// Blockwise pseudo-inverse of u.
    std::optional<CentralPositive> expected_inverse_witness;
    double inverse_witness_error = 0.0;
    bool image_ideal_full = false;  // I_{F_Phi} = I_E
    /// When I_{F_Phi} = I_E: ker Phi = 0 and E w = E.
    std::optional<bool> full_ideal_consequences;
};

InjectivityReport injectivity_analysis(const ModuleMap& phi, const PreserverCertificate& cert,
                                       const ToleranceProfile& tol = kDefaultTolerances);

struct BijectiveReport {
    bool ideals_equal = false;    // I_F = I_E
    bool witness_invertible = false;
    double psi_isometry_residual = 0.0;
    double w_inverse_norm = 0.0;
    CentralPositive u;
    CentralPositive w;
    ModuleMap psi;                // x -> Phi(x) w^{-1}
};

/// Throws PreconditionError unless Phi is injective, onto F and a preserver.
BijectiveReport bijective_analysis(const ModuleMap& phi, const ToleranceProfile& tol = kDefaultTolerances);

/// max over basis pairs of |<Psi b_i, Psi b_j> - c <b_i, b_j>| for c = u (or 1 when u is absent).
double inner_product_residual(const ModuleMap& psi, const std::optional<CentralPositive>& u = std::nullopt);

}  // namespace opmod
