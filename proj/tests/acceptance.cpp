// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "opmod/analysis.hpp"
#include "opmod/instances.hpp"
#include "opmod/linking.hpp"
#include "opmod/preserver.hpp"

using namespace opmod;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Criterion 2 instances, shared with 4 and 5.
std::vector<InstanceBundle> planted_batch() {
    std::vector<InstanceBundle> out;
    for (std::uint64_t s = 0; s < 100; ++s) out.push_back(gen_planted_instance(s, ShapeBounds{3, 4, 4, 4}));
    return out;
}

const std::vector<InstanceBundle>& planted() {
    static const auto batch = planted_batch();
    return batch;
}

Outcome gallery_exactness() {
    const auto g = gallery("example-3.6d");
    const auto report = analyze(g);
    Outcome o;
    const bool certified = report.verdict == Verdict::certified && report.certificate;
    const bool u_ok = certified && report.certificate->u == std::vector<double>{1.0, 0.0};
    const double residual = certified ? report.certificate->residual : 1.0;
    const bool kernel_ok = report.injectivity && report.injectivity->kernel_dimension == 1;
    const bool refused = report.bijective && !report.bijective->applicable &&
                         report.bijective->reason.find("not injective") != std::string::npos;
    o.pass = u_ok && residual <= 1e-12 && kernel_ok && refused;
    o.detail = "u=(1,0) " + std::string(u_ok ? "yes" : "no") + ", residual " + sci(residual) + ", ker dim " +
               (report.injectivity ? std::to_string(report.injectivity->kernel_dimension) : "-") +
               ", bijective refused " + (refused ? "yes" : "no");
    return o;
}

Outcome witness_soundness() {
    double worst_lambda = 0, worst_fresh = 0, worst_perm = 0;
    std::size_t certified = 0;
    for (const auto& b : planted()) {
        const auto out = extract_witness(b.map);
        if (!is_certified(out)) continue;
        ++certified;
        const auto& u = certificate_of(out).u;
        const double ref = std::max(1e-300, b.planted_u->norm());
        for (std::size_t k = 0; k < b.algebra.block_count(); ++k)
            worst_lambda = std::max(worst_lambda, std::abs(u.scalar(k) - b.planted_u->scalar(k)) / ref);
        worst_fresh = std::max(worst_fresh, verify_certificate(b.map, u, 64, derive_seed(b.seed, 1)).max_residual);

        // Re-solve on the basis in reverse order with random complex rescalings.
        SplitMix64 rng(derive_seed(b.seed, 2));
        auto basis = complex_basis(b.domain);
        std::reverse(basis.begin(), basis.end());
        for (auto& e : basis) e = e.scaled(rng.complex_gaussian() + Complex(0.5, 0.0));
        const auto alt = extract_witness(b.map, kDefaultTolerances.certification, basis);
        if (!is_certified(alt)) {
            worst_perm = std::numeric_limits<double>::infinity();
            continue;
        }
        for (std::size_t k = 0; k < b.algebra.block_count(); ++k)
            worst_perm = std::max(worst_perm, std::abs(certificate_of(alt).u.scalar(k) - u.scalar(k)));
    }
    Outcome o;
    o.pass = certified == 100 && worst_lambda <= 1e-9 && worst_fresh <= 1e-8 && worst_perm <= 1e-9;
    o.detail = std::to_string(certified) + "/100 certified, lambda rel err " + sci(worst_lambda) + ", fresh " +
               sci(worst_fresh) + ", permutation " + sci(worst_perm);
    return o;
}

Outcome decision_completeness() {
    std::size_t rejected = 0, found = 0, bad_witness = 0;
    double worst_inner = 0, least_violation = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; rejected < 100 && s < 1000; ++s) {
        const auto adv = gen_adversarial_instance(s);
        if (is_certified(extract_witness(adv.map))) continue;
        ++rejected;
        const auto r = find_violating_pair(adv.map, kDefaultTolerances.violation, 200, derive_seed(s, 4));
        if (!std::holds_alternative<ViolationWitness>(r)) continue;
        ++found;
        const auto& v = std::get<ViolationWitness>(r);
        // Recomputed from the returned pair, not taken from the search.
        const double inner = norm(inner_product(v.x, v.y));
        const double viol = norm(inner_product(adv.map(v.x), adv.map(v.y)));
        worst_inner = std::max(worst_inner, inner);
        least_violation = std::min(least_violation, viol);
        if (inner > 1e-10 || viol <= 1e-6) ++bad_witness;
    }
    Outcome o;
    o.pass = rejected == 100 && found >= 90 && bad_witness == 0;
    o.detail = std::to_string(found) + "/" + std::to_string(rejected) + " witnesses, max |<x,y>| " + sci(worst_inner) +
               ", min |<Phi x,Phi y>| " + sci(least_violation);
    return o;
}

Outcome decomposition() {
    double iso = 0, fact = 0, norm_excess = -std::numeric_limits<double>::infinity();
    std::size_t kernel_mismatch = 0, count = 0;
    for (const auto& b : planted()) {
        const auto out = extract_witness(b.map);
        if (!is_certified(out)) continue;
        ++count;
        const auto& cert = certificate_of(out);
        const auto d = decompose(b.map, cert);
        iso = std::max(iso, d.isometry_residual);
        fact = std::max(fact, d.factorization_residual);
        if (d.kernel_dimension != d.kernel_dimension_rw) ++kernel_mismatch;
        const double n = map_norm(b.map);
        norm_excess = std::max(norm_excess, n * n - cert.u.norm());
    }
    Outcome o;
    o.pass = count > 0 && iso <= 1e-9 && fact <= 1e-9 && kernel_mismatch == 0 && norm_excess <= 1e-8;
    o.detail = std::to_string(count) + " instances, isometry " + sci(iso) + ", factorization " + sci(fact) +
               ", kernel mismatches " + std::to_string(kernel_mismatch) + ", max |Phi|^2 - |u| " + sci(norm_excess);
    return o;
}

Outcome ideal_identities() {
    std::size_t count = 0, failures = 0;
    for (const auto& b : planted()) {
        const auto out = extract_witness(b.map);
        if (!is_certified(out)) continue;
        ++count;
        const auto& cert = certificate_of(out);
        const auto check = image_ideal_check(b.map, cert);
        // Recomputed from the raw pieces: support(u) on I_E against the image's blocks.
        const auto ie = compute_ideal(b.domain);
        const auto expected = cert.u.support(kDefaultTolerances.rank_cutoff).intersect(ie);
        const auto image = compute_ideal(image_submodule(b.map));
        if (!(image == expected) || !image.is_subset_of(ie) || !check.image_equals_witness ||
            !check.image_within_domain)
            ++failures;
    }
    Outcome o;
    o.pass = count > 0 && failures == 0;
    o.detail = std::to_string(count) + " instances, " + std::to_string(failures) + " failures";
    return o;
}

Outcome linking_algebra() {
    double product = 0;
    std::size_t pairs = 0;
    for (std::uint64_t s = 0; pairs < 500; ++s) {
        const auto b = gen_planted_instance(1000 + s);
        const auto l = build_linking(b.domain);
        SplitMix64 rng(derive_seed(s, 5));
        for (int k = 0; k < 25 && pairs < 500; ++k, ++pairs) {
            const auto c = random_linking_element(rng, l);
            const auto d = random_linking_element(rng, l);
            const auto flat = l.flatten(c) * l.flatten(d);
            product = std::max(product, norm(l.flatten(l.product(c, d)) - flat) / std::max(1.0, norm(flat)));
        }
    }
    double gamma = 0, delta = 0, embed = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const auto& b = planted()[i];
        const auto out = extract_witness(b.map);
        if (!is_certified(out)) return {false, "instance " + std::to_string(i) + " not certified"};
        const auto r = verify_linking(b.map, certificate_of(out), 50, derive_seed(b.seed, 3));
        gamma = std::max(gamma, r.gamma_product);
        delta = std::max(delta, r.delta_product);
        embed = std::max({embed, r.gamma_embedding, r.delta_embedding});
    }
    Outcome o;
    o.pass = product <= 1e-12 && gamma <= 1e-9 && delta <= 1e-9 && embed <= 1e-10;
    o.detail = std::to_string(pairs) + " pairs, product " + sci(product) + ", Gamma " + sci(gamma) + ", Delta " +
               sci(delta) + ", embeddings " + sci(embed);
    return o;
}

Outcome bijective_case() {
    double worst = 0;
    std::size_t ideal_failures = 0, refused = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto b = gen_planted_instance(s, ShapeBounds{3, 4, 4, 4}, true);
        try {
            const auto rep = bijective_analysis(b.map);
            if (!rep.ideals_equal || !(compute_ideal(b.codomain) == compute_ideal(b.domain))) ++ideal_failures;
            worst = std::max(worst, rep.psi_isometry_residual);
            SplitMix64 rng(derive_seed(s, 6));
            for (int k = 0; k < 20; ++k) {
                const auto x = oracle::random_element_of(rng, b.domain);
                const auto y = oracle::random_element_of(rng, b.domain);
                const double scale = std::max(1.0, module_norm(x) * module_norm(y));
                worst = std::max(worst, norm(inner_product(rep.psi(x), rep.psi(y)) - inner_product(x, y)) / scale);
            }
        } catch (const PreconditionError&) {
            ++refused;
        }
    }
    Outcome o;
    o.pass = refused == 0 && ideal_failures == 0 && worst <= 1e-9;
    o.detail = "50 instances, refused " + std::to_string(refused) + ", ideal mismatches " +
               std::to_string(ideal_failures) + ", max <Psi x,Psi y> - <x,y> " + sci(worst);
    return o;
}

Outcome lemma_suite() {
    double support = 0, image_support = 0, cover = 0;
    std::size_t minimality_failures = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto b = gen_planted_instance(2000 + s);
        const auto out = extract_witness(b.map);
        if (!is_certified(out)) return {false, "planted instance not certified"};
        SplitMix64 rng(derive_seed(s, 7));
        const auto& e = b.domain;
        const auto& alg = e.algebra();
        // Rank-deficient x so that q_x is a proper projection.
        std::vector<Matrix> data;
        for (std::size_t k = 0; k < alg.block_count(); ++k) {
            const auto rows = static_cast<Eigen::Index>(e.generators()) * alg.block_size(k);
            const Eigen::Index nb = alg.block_size(k);
            const Eigen::Index r = rng.uniform_int(0, nb);
            data.push_back(gaussian_matrix(rng, rows, r) * gaussian_matrix(rng, r, nb));
        }
        const auto x = ModuleElement::project(e, data);
        const auto q = support_projection(inner_product(x, x));
        const double nx = std::max(1.0, module_norm(x));
        support = std::max(support, module_norm(right_action(x, q) - x) / nx);
        const auto px = b.map(x);
        image_support = std::max(image_support, module_norm(right_action(px, q) - px) / std::max(1.0, module_norm(px)));

        const auto a = inner_product(x, oracle::random_element_of(rng, e));
        const auto z = central_cover(a);
        cover = std::max({cover, norm(z * a - a) / std::max(1.0, norm(a)), norm(z * z - z), norm(z.adjoint() - z)});
        // Minimality against every central projection fixing a.
        const std::size_t nblocks = alg.block_count();
        for (unsigned mask = 0; mask < (1U << nblocks); ++mask) {
            std::vector<Complex> sc(nblocks);
            for (std::size_t k = 0; k < nblocks; ++k) sc[k] = (mask >> k) & 1U ? 1.0 : 0.0;
            const auto c = AlgebraElement::central(alg, sc);
            if (norm(c * a - a) <= 1e-10 * std::max(1.0, norm(a)) && norm(z * c - z) > 1e-10) ++minimality_failures;
        }
    }
    Outcome o;
    o.pass = support <= 1e-10 && image_support <= 1e-10 && cover <= 1e-10 && minimality_failures == 0;
    o.detail = "200 draws, x q_x " + sci(support) + ", Phi(x) q_x " + sci(image_support) + ", cover " + sci(cover) +
               ", minimality failures " + std::to_string(minimality_failures);
    return o;
}

Outcome degradation_table() {
    const std::vector<int> grids{4, 8, 16, 32};
    const auto rows = degradation("interval-C0-halfopen", grids);
    Outcome o;
    std::ostringstream d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].w_inverse_norm != static_cast<double>(grids[i])) o.pass = false;
        d << (i ? ", " : "") << "N=" << grids[i] << ": " << rows[i].w_inverse_norm;
    }
    if (rows.size() != grids.size()) o.pass = false;
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "gallery exactness", 1.0, gallery_exactness},
        {2, "witness soundness and uniqueness", 60.0, witness_soundness},
        {3, "decision completeness", 120.0, decision_completeness},
        {4, "decomposition", 120.0, decomposition},
        {5, "ideal identities", 120.0, ideal_identities},
        {6, "linking algebra", 120.0, linking_algebra},
        {7, "bijective case", 120.0, bijective_case},
        {8, "lemma suite", 120.0, lemma_suite},
        {9, "degradation table", 60.0, degradation_table},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %d %s: %s; %s (%.2f s, limit %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), secs, c.time_limit_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
