#include "opmod/suites.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "opmod/instances.hpp"
#include "opmod/linking.hpp"
#include "opmod/preserver.hpp"

namespace opmod {

namespace {

class Tally {
public:
    Tally(std::string suite, std::string name, double threshold)
        : r_{std::move(suite), std::move(name), 0.0, threshold, 0, true} {}

    void observe(double residual) {
        ++r_.cases;
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        r_.worst = std::max(r_.worst, residual);
    }

    InvariantResult finish() {
        r_.pass = r_.worst <= r_.threshold;
        return r_;
    }

private:
    InvariantResult r_;
};

// Per-block rank-deficient element (Q G_1 G_2 with inner rank < rank p_b where possible).
ModuleElement deficient_element(SplitMix64& rng, const HilbertModule& e) {
    const auto& alg = e.algebra();
    std::vector<Matrix> data;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Matrix& q = e.range_basis(b);
        const Eigen::Index nb = alg.block_size(b);
        const Eigen::Index r = q.cols();
        if (r == 0) {
            data.push_back(Matrix::Zero(static_cast<Eigen::Index>(e.generators()) * nb, nb));
            continue;
        }
        const Eigen::Index kmax = std::max<Eigen::Index>(1, std::min(nb, r) - 1);
        const auto k = static_cast<Eigen::Index>(rng.uniform_int(1, kmax));
        data.push_back(q * (gaussian_matrix(rng, r, k) * gaussian_matrix(rng, k, nb)));
    }
    return ModuleElement(e, std::move(data));
}

ModuleElement random_in(SplitMix64& rng, const HilbertModule& e) {
    return ModuleElement::project(e, random_amplified(rng, e.algebra(), e.generators(), 1).blocks());
}

AlgebraElement random_positive(SplitMix64& rng, const FdCStarAlgebra& alg, bool deficient) {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        Eigen::Index k = nb;
        if (deficient) k = static_cast<Eigen::Index>(rng.uniform_int(0, nb));
        const Matrix g = gaussian_matrix(rng, nb, k);
        blocks.push_back(g * g.adjoint());
    }
    return AlgebraElement(alg, std::move(blocks));
}

double lambda_error(const CentralPositive& found, const CentralPositive& planted) {
    double err = 0.0;
    for (std::size_t b : planted.ideal().support())
        err = std::max(err, std::abs(found.scalar(b) - planted.scalar(b)) / std::max(1.0, planted.scalar(b)));
    return err;
}

// ---------------------------------------------------------------------------

std::vector<InvariantResult> core_suite(std::uint64_t seed, std::size_t samples, const ToleranceProfile& tol) {
    const std::string s = "core";
    Tally cstar(s, "cstar_identity |a*a| = |a|^2", 1e-10);
    Tally hermitian(s, "inner_product_hermitian", 1e-12);
    Tally positive(s, "inner_product_positive", 1e-12);
    Tally ideal_within(s, "image_ideal_within_domain_ideal", 0.0);
    Tally recover(s, "planted_lambda_recovered", 1e-9);
    Tally sound(s, "certificate_fresh_samples_10x", 10.0 * tol.certification);
    Tally unique(s, "witness_unique_under_permutation", 1e-9);
    Tally bound(s, "map_norm_sq_le_u_norm", 1e-8);
    Tally scale(s, "witness_scale_equivariance", 1e-10);
    Tally kernel(s, "kernel_phi_eq_kernel_rw", 0.0);
    Tally theta(s, "theta_isometric", 1e-9);
    Tally factor(s, "phi_eq_theta_rw", 1e-9);
    Tally zero(s, "zero_map_certifies_zero", 0.0);
    Tally complete(s, "violation_found_fraction_missing", 0.1);
    Tally witness_ok(s, "violation_witness_orthogonal", 1e-10);

    SplitMix64 rng(derive_seed(seed, 0xC0));
    std::size_t rejected = 0, found = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const FdCStarAlgebra alg = gen_algebra(derive_seed(seed, 1000 + i), 3, 4);
        const AlgebraElement a = random_element(rng, alg);
        const double na = norm(a);
        cstar.observe(std::abs(norm(a.adjoint() * a) - na * na) / std::max(1.0, na * na));

        const InstanceBundle plant = gen_planted_instance(derive_seed(seed, 2000 + i));
        const ModuleMap& phi = plant.map;
        const HilbertModule& e = plant.domain;
        const ModuleElement x = random_in(rng, e);
        const ModuleElement y = random_in(rng, e);
        const double xy = std::max(1.0, module_norm(x) * module_norm(y));
        hermitian.observe(norm(inner_product(x, y).adjoint() - inner_product(y, x)) / xy);
        double min_eig = 0.0;
        const AlgebraElement xx = inner_product(x, x);
        for (const auto& blk : xx.blocks()) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (blk + blk.adjoint()));
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
        positive.observe(-min_eig / std::max(1.0, norm(xx)));
        positive.observe(module_norm(ModuleElement::zero(e)));

        const ModuleMap arbitrary(e, plant.codomain,
                                  random_amplified(rng, e.algebra(), plant.codomain.generators(), e.generators()));
        const bool within = compute_ideal(image_submodule(arbitrary, tol), tol).is_subset_of(compute_ideal(e, tol));
        ideal_within.observe(within ? 0.0 : 1.0);

        const WitnessOutcome outcome = extract_witness(phi, tol.certification);
        if (!is_certified(outcome)) {
            recover.observe(std::numeric_limits<double>::infinity());
            continue;
        }
        const PreserverCertificate& cert = certificate_of(outcome);
        recover.observe(lambda_error(cert.u, *plant.planted_u));
        sound.observe(verify_certificate(phi, cert.u, 32, derive_seed(seed, 3000 + i)).max_residual);

        auto basis = complex_basis(e);
        std::reverse(basis.begin(), basis.end());
        const WitnessOutcome permuted = extract_witness(phi, tol.certification, basis);
        unique.observe(is_certified(permuted) ? lambda_error(certificate_of(permuted).u, cert.u)
                                              : std::numeric_limits<double>::infinity());

        const double mn = map_norm(phi);
        bound.observe(std::max(0.0, mn * mn - cert.u.norm()));

        const Complex c = std::polar(rng.uniform(0.2, 3.0), rng.uniform(0.0, 6.283185307179586));
        const WitnessOutcome scaled = extract_witness(phi.scaled(c), tol.certification);
        if (is_certified(scaled)) {
            double err = 0.0;
            const auto& su = certificate_of(scaled).u;
            for (std::size_t b = 0; b < plant.algebra.block_count(); ++b) {
                const double expected = std::norm(c) * cert.u.scalar(b);
                err = std::max(err, std::abs(su.scalar(b) - expected) / std::max(1.0, expected));
            }
            scale.observe(err);
        } else {
            scale.observe(std::numeric_limits<double>::infinity());
        }

        try {
            const Decomposition d = decompose(phi, cert, tol);
            kernel.observe(d.kernel_dimension == d.kernel_dimension_rw ? 0.0 : 1.0);
            theta.observe(d.isometry_residual);
            factor.observe(d.factorization_residual);
        } catch (const InternalInconsistency&) {
            kernel.observe(1.0);
        }

        const ModuleMap nil = phi.scaled(0.0);
        const WitnessOutcome z = extract_witness(nil, tol.certification);
        zero.observe(is_certified(z) ? certificate_of(z).u.norm() : 1.0);

        const InstanceBundle adv = gen_adversarial_instance(derive_seed(seed, 4000 + i));
        if (!is_certified(extract_witness(adv.map, tol.certification))) {
            ++rejected;
            const SearchOutcome so = find_violating_pair(adv.map, tol.violation, 200, derive_seed(seed, 5000 + i));
            if (const auto* v = std::get_if<ViolationWitness>(&so)) {
                ++found;
                witness_ok.observe(v->violation > tol.violation ? v->inner_norm : std::numeric_limits<double>::infinity());
            }
        }
    }
    complete.observe(rejected ? 1.0 - static_cast<double>(found) / static_cast<double>(rejected) : 0.0);

    return {cstar.finish(), hermitian.finish(), positive.finish(), ideal_within.finish(), recover.finish(),
            sound.finish(), unique.finish(),    bound.finish(),    scale.finish(),        kernel.finish(),
            theta.finish(), factor.finish(),    zero.finish(),     complete.finish(),     witness_ok.finish()};
}

std::vector<InvariantResult> lemma_suite(std::uint64_t seed, std::size_t samples, const ToleranceProfile& tol) {
    const std::string s = "lemmas";
    Tally support(s, "support_projection aq = qa = a, q^2 = q = q*", 1e-10);
    Tally lift(s, "central_lift |v| = |b|, v p = b", 1e-10);
    Tally partition(s, "spectral_partition e(0,d] + e(d,1] = e(0,1]", 1e-10);
    Tally cover(s, "central_cover_minimal", 0.0);
    Tally xq(s, "module_support x q_x = x", 1e-10);
    Tally phixq(s, "module_support Phi(x) q_x = Phi(x)", 1e-10);
    Tally cancel(s, "spectral_cancellation q_d u = q_d v", 1e-9);
    Tally ideal_within(s, "image_ideal_within_domain_ideal", 0.0);

    SplitMix64 rng(derive_seed(seed, 0x1E));
    for (std::size_t i = 0; i < samples; ++i) {
        const FdCStarAlgebra alg = gen_algebra(derive_seed(seed, 6000 + i), 4, 4);

        const AlgebraElement a = random_positive(rng, alg, true);
        const AlgebraElement q = support_projection(a, tol);
        const double na = std::max(1.0, norm(a));
        support.observe(std::max({norm(a * q - a) / na, norm(q * a - a) / na, norm(q * q - q), norm(q - q.adjoint())}));

        // b = (+) beta_b p_b with p a random projection.
        std::vector<Matrix> pblocks, bblocks;
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            const int nb = alg.block_size(b);
            const auto r = rng.uniform_int(0, nb);
            Matrix pb = Matrix::Zero(nb, nb);
            if (r > 0) {
                const Matrix v = random_isometry(rng, nb, r);
                pb = v * v.adjoint();
            }
            const double beta = rng.uniform(0.0, 3.0);
            bblocks.push_back(beta * pb);
            pblocks.push_back(std::move(pb));
        }
        const AlgebraElement p(alg, pblocks);
        const AlgebraElement bel(alg, bblocks);
        const CentralPositive v = central_lift(bel, p, tol);
        lift.observe(std::max(std::abs(v.norm() - norm(bel)), norm(v.to_element() * p - bel)));

        const AlgebraElement h = random_positive(rng, alg, false);
        const AlgebraElement hn = h.scaled(1.0 / norm(h));
        const double delta = rng.uniform(0.05, 0.95);
        const auto lo = spectral_projection(hn, 0.0, delta, IntervalKind::open_closed, tol);
        const auto hi = spectral_projection(hn, delta, 1.0, IntervalKind::open_closed, tol);
        const auto all = spectral_projection(hn, 0.0, 1.0, IntervalKind::open_closed, tol);
        if (!lo.ambiguous() && !hi.ambiguous() && !all.ambiguous())
            partition.observe(norm(lo.projection + hi.projection - all.projection));

        // Blocks of a zeroed at random; the cover must sit inside every central z with z a = a.
        std::vector<Matrix> cblocks;
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            const int nb = alg.block_size(b);
            cblocks.push_back(rng.uniform() < 0.4 ? Matrix::Zero(nb, nb) : Matrix(gaussian_matrix(rng, nb, nb)));
        }
        const AlgebraElement ca(alg, cblocks);
        const AlgebraElement cov = central_cover(ca, tol);
        bool minimal = norm(cov * ca - ca) <= tol.zero_entry;
        const std::size_t nbl = alg.block_count();
        for (std::size_t mask = 0; mask < (std::size_t{1} << nbl); ++mask) {
            std::vector<Complex> zs(nbl);
            for (std::size_t b = 0; b < nbl; ++b) zs[b] = (mask >> b) & 1U ? 1.0 : 0.0;
            const AlgebraElement z = AlgebraElement::central(alg, zs);
            if (norm(z * ca - ca) > tol.zero_entry) continue;
            if (norm(cov * z - cov) > tol.zero_entry) minimal = false;
        }
        cover.observe(minimal ? 0.0 : 1.0);

        const InstanceBundle plant = gen_planted_instance(derive_seed(seed, 7000 + i));
        const ModuleElement x = deficient_element(rng, plant.domain);
        const double nx = module_norm(x);
        if (nx > 0.0) {
            const AlgebraElement ax = inner_product(x, x).scaled(1.0 / (nx * nx));
            const AlgebraElement qx = support_projection(ax, tol);
            xq.observe(module_norm(right_action(x, qx) - x) / nx);
            const ModuleElement px = plant.map(x);
            phixq.observe(module_norm(right_action(px, qx) - px) / std::max(1.0, module_norm(px)));

            // a u = a v whenever v - u vanishes on the support of a.
            const AlgebraElement u = random_element(rng, plant.algebra);
            const AlgebraElement ident = AlgebraElement::identity(plant.algebra);
            const AlgebraElement vv = u + (ident - qx) * random_element(rng, plant.algebra);
            const double d = rng.uniform(0.05, 0.95);
            const auto qd = spectral_projection(ax, d, 1.0, IntervalKind::open_closed, tol);
            cancel.observe(norm(qd.projection * u - qd.projection * vv));
        }

        const ModuleMap arbitrary(plant.domain, plant.codomain,
                                  random_amplified(rng, plant.algebra, plant.codomain.generators(), plant.domain.generators()));
        const bool within =
            compute_ideal(image_submodule(arbitrary, tol), tol).is_subset_of(compute_ideal(plant.domain, tol));
        ideal_within.observe(within ? 0.0 : 1.0);
    }
    return {support.finish(), lift.finish(), partition.finish(), cover.finish(),
            xq.finish(),      phixq.finish(), cancel.finish(),   ideal_within.finish()};
}

std::vector<InvariantResult> linking_suite(std::uint64_t seed, std::size_t samples, const ToleranceProfile& tol) {
    const std::string s = "linking";
    Tally product(s, "componentwise_product_eq_flat", 1e-12);
    Tally involution(s, "involution_eq_conjugate_transpose", 1e-12);
    Tally centralizer(s, "double_centralizer", 1e-9);
    Tally hat(s, "hat_identities", 1e-9);
    Tally check(s, "check_identities", 1e-9);
    Tally gamma(s, "gamma_product M_{u,u}", 1e-9);
    Tally delta(s, "delta_product M_{u,u^1/2}", 1e-9);
    Tally corner(s, "delta_corner diag(0, u<x,y>)", 1e-9);
    Tally embed(s, "gamma_J = J_Phi = delta_J", 1e-10);
    Tally converse(s, "converse_disjointness_fails", 0.0);

    SplitMix64 rng(derive_seed(seed, 0x11));
    const std::size_t instances = std::max<std::size_t>(1, samples / 10);
    for (std::size_t i = 0; i < samples; ++i) {
        const InstanceBundle plant = gen_planted_instance(derive_seed(seed, 8000 + i));
        const LinkingAlgebra L(plant.domain, tol);
        const LinkingElement c = random_linking_element(rng, L);
        const LinkingElement d = random_linking_element(rng, L);
        product.observe(L.distance(L.product(c, d), L.flat_product(c, d)));
        involution.observe(norm(L.flatten(L.adjoint(c)) - L.flatten(c).adjoint()));
        if (i >= instances) continue;

        const WitnessOutcome outcome = extract_witness(plant.map, tol.certification);
        if (!is_certified(outcome)) {
            gamma.observe(std::numeric_limits<double>::infinity());
            continue;
        }
        const LinkingResiduals r = verify_linking(plant.map, certificate_of(outcome), 10, derive_seed(seed, 9000 + i), tol);
        centralizer.observe(r.double_centralizer);
        hat.observe(std::max({r.hat_theta, r.hat_involution, r.hat_apply}));
        check.observe(std::max(r.check_involution, r.check_product));
        gamma.observe(r.gamma_product);
        delta.observe(r.delta_product);
        corner.observe(r.delta_corner);
        embed.observe(std::max(r.gamma_embedding, r.delta_embedding));

        const InstanceBundle adv = gen_adversarial_instance(derive_seed(seed, 9500 + i));
        if (!is_certified(extract_witness(adv.map, tol.certification))) {
            const SearchOutcome so = find_violating_pair(adv.map, tol.violation, 200, derive_seed(seed, 9700 + i));
            if (const auto* v = std::get_if<ViolationWitness>(&so)) {
                const auto [before, after] = disjointness_failure(adv.map, *v);
                converse.observe(before <= 1e-10 && after > tol.violation ? 0.0 : 1.0);
            }
        }
    }
    return {product.finish(), involution.finish(), centralizer.finish(), hat.finish(),   check.finish(),
            gamma.finish(),   delta.finish(),      corner.finish(),      embed.finish(), converse.finish()};
}

}  // namespace

std::vector<std::string> suite_names() { return {"core", "linking", "lemmas", "all"}; }

std::vector<InvariantResult> run_suite(const std::string& suite, std::uint64_t seed, std::size_t samples,
                                       const ToleranceProfile& tol) {
    if (samples == 0) throw InvalidInput("samples must be at least 1");
    std::vector<InvariantResult> out;
    auto append = [&](std::vector<InvariantResult> part) { out.insert(out.end(), part.begin(), part.end()); };
    if (suite == "core" || suite == "all") append(core_suite(seed, samples, tol));
    if (suite == "lemmas" || suite == "all") append(lemma_suite(seed, samples, tol));
    if (suite == "linking" || suite == "all") append(linking_suite(seed, samples, tol));
    if (out.empty()) throw InvalidInput("unknown suite '" + suite + "' (core, linking, lemmas, all)");
    return out;
}

bool all_pass(const std::vector<InvariantResult>& results) noexcept {
    return std::all_of(results.begin(), results.end(), [](const InvariantResult& r) { return r.pass; });
}

std::string format_suite(const std::vector<InvariantResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(8) << r.suite << std::setw(48) << r.name
           << " worst " << std::setw(12) << std::setprecision(4) << r.worst << " threshold " << std::setw(10)
           << r.threshold << " cases " << r.cases << "\n";
    }
    return os.str();
}

}  // namespace opmod
