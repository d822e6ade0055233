#pragma once

// Seeded instance generation: planted preservers, perturbed and adversarial
// maps, and the named gallery of small exact and discretized examples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opmod/hilbert_module.hpp"
#include "opmod/random.hpp"

namespace opmod {

struct InstanceBundle {
    FdCStarAlgebra algebra;
    HilbertModule domain;
    HilbertModule codomain;
    ModuleMap map;
    std::optional<CentralPositive> planted_u;
    std::uint64_t seed = 0;
    /// planted-preserver, perturbed, adversarial or gallery:<name>.
    std::string provenance;
    std::vector<std::string> notes;
};

/// Throws ValidationError when the parts do not fit together.
void validate_bundle(const InstanceBundle& bundle);

struct ShapeBounds {
    int max_blocks = 3;
    int max_dim = 4;
    int max_n = 4;
    int max_m = 4;
};

FdCStarAlgebra gen_algebra(std::uint64_t seed, int max_blocks, int max_dim);

/// Random projection of order n with the given rank on each block.
HilbertModule gen_module(SplitMix64& rng, const FdCStarAlgebra& algebra, std::size_t n,
                         const std::vector<std::size_t>& ranks);

/// Phi = V o R_w with w = u^{1/2}: u drawn on I_E (about one block in five set
/// to zero, the rest uniform in (0, 2]) and V a random module isometry of Ew into F.
/// Throws GenerationError when F cannot hold an isometric copy of Ew.
InstanceBundle gen_planted_preserver(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain);
/// As above with prescribed per-block lambdas (entries off I_E are ignored).
InstanceBundle gen_planted_preserver(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain,
                                     const std::vector<double>& lambdas);

/// A planted preserver plus noise * (complex Gaussian A-matrix).
InstanceBundle gen_perturbed(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain,
                             double noise);

/// Dense random A-matrix. Flags domains with trivial orthogonality (every
/// block of p of rank <= 1), where every module map is a preserver.
InstanceBundle gen_adversarial(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain);

/// Random algebra and modules within `bounds`, then a planted preserver.
/// With `invertible`, F has the ranks of E, u > 0 on I_E and Phi is bijective.
InstanceBundle gen_planted_instance(std::uint64_t seed, const ShapeBounds& bounds = {}, bool invertible = false);
InstanceBundle gen_adversarial_instance(std::uint64_t seed, const ShapeBounds& bounds = {});

/// example-3.6d, conjugate-module(k), interval-C01(N), interval-C0-halfopen(N),
/// vanishing-at-midpoint(N). Throws InvalidInput for other names.
InstanceBundle gallery(const std::string& name);
/// Base names; each is accepted by gallery() as is, with the default parameter.
std::vector<std::string> gallery_names();

}  // namespace opmod
