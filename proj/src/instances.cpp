#include "opmod/instances.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace opmod {

namespace {

constexpr double kZeroLambdaRate = 0.2;

AmplifiedElement projection_from_ranks(SplitMix64& rng, const FdCStarAlgebra& alg, std::size_t n,
                                       const std::vector<std::size_t>& ranks) {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto dim = static_cast<Eigen::Index>(n * alg.block_size(b));
        const auto r = static_cast<Eigen::Index>(ranks[b]);
        if (r == 0) {
            blocks.push_back(Matrix::Zero(dim, dim));
            continue;
        }
        const Matrix q = random_isometry(rng, dim, r);
        Matrix p = q * q.adjoint();
        p = (0.5 * (p + p.adjoint())).eval();
        blocks.push_back(std::move(p));
    }
    return AmplifiedElement(alg, n, n, std::move(blocks));
}

std::vector<std::size_t> random_ranks(SplitMix64& rng, const FdCStarAlgebra& alg, std::size_t n) {
    std::vector<std::size_t> ranks(alg.block_count());
    bool any = false;
    for (std::size_t b = 0; b < ranks.size(); ++b) {
        ranks[b] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n * alg.block_size(b))));
        any = any || ranks[b] > 0;
    }
    if (!any) ranks[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ranks.size()) - 1))] = 1;
    return ranks;
}

std::vector<double> random_lambdas(SplitMix64& rng, const IdealDescriptor& ideal) {
    std::vector<double> lambdas(ideal.algebra().block_count(), 0.0);
    bool any = false;
    for (std::size_t b : ideal.support()) {
        const bool zero = rng.uniform() < kZeroLambdaRate;
        const double value = 2.0 * (1.0 - rng.uniform());  // (0, 2]
        if (!zero) {
            lambdas[b] = value;
            any = true;
        }
    }
    if (!any && !ideal.support().empty()) lambdas[ideal.support().front()] = 1.0;
    return lambdas;
}

// Isometry Q_F W Q_E^* of range(p_b) restricted to the blocks where lambda > 0, times sqrt(lambda).
AmplifiedElement planted_matrix(SplitMix64& rng, const HilbertModule& domain, const HilbertModule& codomain,
                                 const std::vector<double>& lambdas) {
    const auto& alg = domain.algebra();
    const std::size_t n = domain.generators();
    const std::size_t m = codomain.generators();
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto nb = static_cast<Eigen::Index>(alg.block_size(b));
        Matrix t = Matrix::Zero(static_cast<Eigen::Index>(m) * nb, static_cast<Eigen::Index>(n) * nb);
        const std::size_t r = lambdas[b] > 0.0 ? domain.block_rank(b) : 0;
        if (r > 0) {
            const std::size_t s = codomain.block_rank(b);
            if (s < r) {
                throw GenerationError("codomain too small on block " + std::to_string(b) + ": rank " +
                                      std::to_string(s) + " cannot receive an isometric copy of rank " +
                                      std::to_string(r));
            }
            const Matrix w = random_isometry(rng, static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r));
            t = std::sqrt(lambdas[b]) * codomain.range_basis(b) * w * domain.range_basis(b).adjoint();
        }
        blocks.push_back(std::move(t));
    }
    return AmplifiedElement(alg, m, n, std::move(blocks));
}

InstanceBundle assemble(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain,
                        const AmplifiedElement& t, std::optional<CentralPositive> planted, std::string provenance) {
    return InstanceBundle{domain.algebra(), domain, codomain, ModuleMap(domain, codomain, t),
                          std::move(planted), seed, std::move(provenance), {}};
}

bool trivial_orthogonality(const HilbertModule& module) {
    for (std::size_t b = 0; b < module.algebra().block_count(); ++b) {
        if (module.block_rank(b) > 1) return false;
    }
    return true;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

void validate_bundle(const InstanceBundle& bundle) {
    if (!(bundle.domain.algebra() == bundle.algebra)) throw ValidationError("module", "algebra mismatch");
    if (!(bundle.codomain.algebra() == bundle.algebra)) throw ValidationError("codomain", "algebra mismatch");
    if (!(bundle.map.domain().algebra() == bundle.algebra)) throw ValidationError("map", "algebra mismatch");
    if (bundle.map.matrix().rows() != bundle.codomain.generators() ||
        bundle.map.matrix().cols() != bundle.domain.generators()) {
        throw ValidationError("map", "shape does not match module generators");
    }
    if (bundle.planted_u && !(bundle.planted_u->algebra() == bundle.algebra)) {
        throw ValidationError("planted_u", "algebra mismatch");
    }
}

FdCStarAlgebra gen_algebra(std::uint64_t seed, int max_blocks, int max_dim) {
    if (max_blocks < 1 || max_dim < 1) throw InvalidInput("gen_algebra bounds must be at least 1");
    SplitMix64 rng(derive_seed(seed, 0xA16));
    const auto count = rng.uniform_int(1, max_blocks);
    std::vector<int> blocks;
    for (std::int64_t i = 0; i < count; ++i) blocks.push_back(static_cast<int>(rng.uniform_int(1, max_dim)));
    return FdCStarAlgebra(std::move(blocks));
}

HilbertModule gen_module(SplitMix64& rng, const FdCStarAlgebra& algebra, std::size_t n,
                         const std::vector<std::size_t>& ranks) {
    if (ranks.size() != algebra.block_count()) throw InvalidInput("one rank per algebra block required");
    for (std::size_t b = 0; b < ranks.size(); ++b) {
        if (ranks[b] > n * algebra.block_size(b)) throw InvalidInput("rank exceeds n * n_b on block " + std::to_string(b));
    }
    return HilbertModule(algebra, n, projection_from_ranks(rng, algebra, n, ranks));
}

InstanceBundle gen_planted_preserver(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain) {
    SplitMix64 rng(derive_seed(seed, 0x1A));
    const IdealDescriptor ideal = compute_ideal(domain);
    return gen_planted_preserver(seed, domain, codomain, random_lambdas(rng, ideal));
}

InstanceBundle gen_planted_preserver(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain,
                                     const std::vector<double>& lambdas) {
    require_same_algebra(domain.algebra(), codomain.algebra(), "gen_planted_preserver");
    const auto& alg = domain.algebra();
    if (lambdas.size() != alg.block_count()) throw InvalidInput("one lambda per algebra block required");
    const IdealDescriptor ideal = compute_ideal(domain);
    std::vector<double> on_ideal(alg.block_count(), 0.0);
    for (std::size_t b : ideal.support()) {
        if (!(lambdas[b] >= 0.0)) throw InvalidInput("planted lambdas must be nonnegative");
        on_ideal[b] = lambdas[b];
    }
    SplitMix64 rng(derive_seed(seed, 0x1B));
    const AmplifiedElement t = planted_matrix(rng, domain, codomain, on_ideal);
    return assemble(seed, domain, codomain, t, CentralPositive(ideal, on_ideal), "planted-preserver");
}

InstanceBundle gen_perturbed(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain,
                             double noise) {
    InstanceBundle plant = gen_planted_preserver(seed, domain, codomain);
    SplitMix64 rng(derive_seed(seed, 0x1C));
    const AmplifiedElement t = plant.map.matrix() +
                               random_amplified(rng, domain.algebra(), codomain.generators(), domain.generators())
                                   .scaled(noise);
    InstanceBundle out = assemble(seed, domain, codomain, t, plant.planted_u, "perturbed");
    out.notes.push_back("planted_u is the witness of the unperturbed map; noise " + std::to_string(noise));
    return out;
}

InstanceBundle gen_adversarial(std::uint64_t seed, const HilbertModule& domain, const HilbertModule& codomain) {
    require_same_algebra(domain.algebra(), codomain.algebra(), "gen_adversarial");
    SplitMix64 rng(derive_seed(seed, 0x1D));
    const AmplifiedElement t =
        random_amplified(rng, domain.algebra(), codomain.generators(), domain.generators());
    InstanceBundle out = assemble(seed, domain, codomain, t, std::nullopt, "adversarial");
    if (trivial_orthogonality(domain)) {
        out.notes.push_back("trivial-orthogonality: every block of the domain projection has rank <= 1, "
                            "so orthogonal pairs have a zero member and every module map is a preserver");
    }
    return out;
}

InstanceBundle gen_planted_instance(std::uint64_t seed, const ShapeBounds& bounds, bool invertible) {
    const FdCStarAlgebra alg = gen_algebra(derive_seed(seed, 0x2A), bounds.max_blocks, bounds.max_dim);
    SplitMix64 rng(derive_seed(seed, 0x2B));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, bounds.max_n));
    const auto ranks = random_ranks(rng, alg, n);

    std::size_t needed = 1;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        needed = std::max(needed, ceil_div(ranks[b], static_cast<std::size_t>(alg.block_size(b))));
    }
    const auto m_hi = std::max<std::int64_t>(bounds.max_m, static_cast<std::int64_t>(needed));
    const auto m = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(needed), m_hi));

    std::vector<std::size_t> target_ranks(ranks);
    if (!invertible) {
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            target_ranks[b] = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(ranks[b]), static_cast<std::int64_t>(m * alg.block_size(b))));
        }
    }
    const HilbertModule domain = gen_module(rng, alg, n, ranks);
    const HilbertModule codomain = gen_module(rng, alg, m, target_ranks);

    if (!invertible) return gen_planted_preserver(seed, domain, codomain);
    std::vector<double> lambdas(alg.block_count(), 0.0);
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        if (ranks[b] > 0) lambdas[b] = rng.uniform(0.25, 2.0);
    }
    InstanceBundle out = gen_planted_preserver(seed, domain, codomain, lambdas);
    out.notes.push_back("invertible: codomain ranks equal domain ranks and u > 0 on the domain ideal");
    return out;
}

InstanceBundle gen_adversarial_instance(std::uint64_t seed, const ShapeBounds& bounds) {
    const FdCStarAlgebra alg = gen_algebra(derive_seed(seed, 0x3A), bounds.max_blocks, bounds.max_dim);
    SplitMix64 rng(derive_seed(seed, 0x3B));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, bounds.max_n));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, bounds.max_m));
    const HilbertModule domain = gen_module(rng, alg, n, random_ranks(rng, alg, n));
    const HilbertModule codomain = gen_module(rng, alg, m, random_ranks(rng, alg, m));
    return gen_adversarial(seed, domain, codomain);
}

namespace {

struct GalleryName {
    std::string base;
    std::optional<int> parameter;
};

GalleryName parse_gallery_name(const std::string& name) {
    static const std::regex pattern(R"(^([A-Za-z0-9.\-]+)(?:\((\d{1,6})\))?$)");
    std::smatch match;
    if (!std::regex_match(name, match, pattern)) throw InvalidInput("malformed gallery name '" + name + "'");
    GalleryName out{match[1].str(), std::nullopt};
    if (match[2].matched) out.parameter = std::stoi(match[2].str());
    return out;
}

AmplifiedElement diagonal_column(const FdCStarAlgebra& alg, const std::vector<double>& values) {
    std::vector<Matrix> blocks;
    for (double v : values) blocks.push_back(Matrix::Constant(1, 1, Complex(v, 0.0)));
    return AmplifiedElement(alg, 1, 1, std::move(blocks));
}

std::vector<double> squares(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x * x; });
    return out;
}

InstanceBundle example_36d() {
    const FdCStarAlgebra alg({1, 1});
    const HilbertModule domain = HilbertModule::free(alg, 1);
    const AmplifiedElement first = diagonal_column(alg, {1.0, 0.0});
    const HilbertModule codomain(alg, 1, first);
    InstanceBundle out = assemble(0, domain, codomain, first, CentralPositive(IdealDescriptor::full(alg), {1.0, 0.0}),
                                  "gallery:example-3.6d");
    out.notes.push_back("E = A = C+C, F = C+0, Phi(x) = x(1,0): surjective preserver with E not isomorphic to F");
    return out;
}

InstanceBundle conjugate_module(int k) {
    if (k < 1) throw InvalidInput("conjugate-module(k) needs k >= 1");
    const FdCStarAlgebra alg({k});
    Matrix e11 = Matrix::Zero(k, k);
    e11(0, 0) = 1.0;
    const AmplifiedElement p(alg, 1, 1, {e11});
    const HilbertModule module(alg, 1, p);
    InstanceBundle out = assemble(0, module, module, p.scaled(2.0),
                                  CentralPositive(IdealDescriptor::full(alg), {4.0}),
                                  "gallery:conjugate-module(" + std::to_string(k) + ")");
    out.notes.push_back("E = e11 M_k: rank-one corner, orthogonal pairs have a zero member; Phi = 2 id, u = 4");
    return out;
}

// A = C[0,1] on the grid t_i = i/N, i = 0..N; F = functions vanishing at t = 0.
InstanceBundle interval_c01(int grid) {
    if (grid < 1) throw InvalidInput("interval-C01(N) needs N >= 1");
    const std::size_t points = static_cast<std::size_t>(grid) + 1;
    const FdCStarAlgebra alg(std::vector<int>(points, 1));
    std::vector<double> a(points), vanish(points, 1.0);
    for (std::size_t i = 0; i < points; ++i) a[i] = static_cast<double>(i) / grid;
    vanish[0] = 0.0;
    const HilbertModule domain = HilbertModule::free(alg, 1);
    const HilbertModule codomain(alg, 1, diagonal_column(alg, vanish));
    InstanceBundle out = assemble(0, domain, codomain, diagonal_column(alg, a),
                                  CentralPositive(IdealDescriptor::full(alg), squares(a)),
                                  "gallery:interval-C01(" + std::to_string(grid) + ")");
    out.notes.push_back("discretized: Phi = R_a, a(t_i) = i/N on t_0..t_N; the grid point t = 0 gives a one-dimensional "
                        "kernel, so injectivity and the missing isometry into C_0(0,1] are only visible as N grows");
    return out;
}

// A = C_0(0,1] on the grid t_i = i/N, i = 1..N.
InstanceBundle interval_c0_halfopen(int grid) {
    if (grid < 1) throw InvalidInput("interval-C0-halfopen(N) needs N >= 1");
    const std::size_t points = static_cast<std::size_t>(grid);
    const FdCStarAlgebra alg(std::vector<int>(points, 1));
    std::vector<double> a(points);
    for (std::size_t i = 0; i < points; ++i) a[i] = static_cast<double>(i + 1) / grid;
    const HilbertModule module = HilbertModule::free(alg, 1);
    InstanceBundle out = assemble(0, module, module, diagonal_column(alg, a),
                                  CentralPositive(IdealDescriptor::full(alg), squares(a)),
                                  "gallery:interval-C0-halfopen(" + std::to_string(grid) + ")");
    out.notes.push_back("discretized: Phi = R_a, a(t_i) = i/N; w = a is invertible at every finite N with "
                        "|w^{-1}| = N, diverging as N grows");
    return out;
}

// A = C_0(0,1) on the interior grid t_i = i/N, i = 1..N-1; E = functions vanishing at 1/2.
InstanceBundle vanishing_at_midpoint(int grid) {
    if (grid < 4 || grid % 2 != 0) throw InvalidInput("vanishing-at-midpoint(N) needs an even N >= 4");
    const std::size_t points = static_cast<std::size_t>(grid) - 1;
    const FdCStarAlgebra alg(std::vector<int>(points, 1));
    std::vector<double> p(points, 1.0);
    p[static_cast<std::size_t>(grid / 2) - 1] = 0.0;
    const HilbertModule domain(alg, 1, diagonal_column(alg, p));
    const HilbertModule codomain = HilbertModule::free(alg, 1);
    const IdealDescriptor ideal = compute_ideal(domain);
    InstanceBundle out = assemble(0, domain, codomain, AmplifiedElement::identity(alg, 1),
                                  CentralPositive(ideal, p),
                                  "gallery:vanishing-at-midpoint(" + std::to_string(grid) + ")");
    out.notes.push_back("discretized: inclusion of {f : f(1/2) = 0} into A; at finite N the inclusion is adjointable, "
                        "the obstruction appears only in the continuum");
    return out;
}

}  // namespace

InstanceBundle gallery(const std::string& name) {
    const GalleryName parsed = parse_gallery_name(name);
    const auto param = [&](int fallback) { return parsed.parameter.value_or(fallback); };
    if (parsed.base == "example-3.6d" && !parsed.parameter) return example_36d();
    if (parsed.base == "conjugate-module") return conjugate_module(param(2));
    if (parsed.base == "interval-C01") return interval_c01(param(8));
    if (parsed.base == "interval-C0-halfopen") return interval_c0_halfopen(param(8));
    if (parsed.base == "vanishing-at-midpoint") return vanishing_at_midpoint(param(8));
    throw InvalidInput("unknown gallery entry '" + name + "'");
}

std::vector<std::string> gallery_names() {
    return {"example-3.6d", "conjugate-module", "interval-C01", "interval-C0-halfopen", "vanishing-at-midpoint"};
}

}  // namespace opmod
