#include "doctest.h"
#include "oracles.hpp"
#include "opmod/hilbert_module.hpp"
#include "opmod/instances.hpp"

using namespace opmod;

namespace {

AmplifiedElement column_projection(const FdCStarAlgebra& alg, std::size_t n, const std::vector<std::size_t>& ranks,
                                   SplitMix64& rng) {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto dim = static_cast<Eigen::Index>(n) * alg.block_size(b);
        Matrix p = Matrix::Zero(dim, dim);
        if (ranks[b] > 0) {
            const Matrix q = random_isometry(rng, dim, static_cast<Eigen::Index>(ranks[b]));
            p = q * q.adjoint();
        }
        blocks.push_back(p);
    }
    return AmplifiedElement(alg, n, n, blocks);
}

ModuleMap random_map(SplitMix64& rng, const HilbertModule& e, const HilbertModule& f) {
    return ModuleMap(e, f, random_amplified(rng, e.algebra(), f.generators(), e.generators()));
}

}  // namespace

TEST_CASE("module construction") {
    const auto alg = make_algebra({1, 2});
    const auto e = HilbertModule::free(alg, 2);
    CHECK(e.complex_dimension() == 2 * 1 + 4 * 2);
    CHECK(e.block_rank(1) == 4);
    CHECK_FALSE(e.is_zero());

    CHECK_THROWS_AS(HilbertModule(alg, 1, AmplifiedElement::zero(alg, 1, 1)), ZeroModule);
    const auto bad = AmplifiedElement::identity(alg, 1).scaled(2.0);
    CHECK_THROWS_AS(HilbertModule(alg, 1, bad), InvalidInput);
    CHECK(HilbertModule::submodule(alg, 1, AmplifiedElement::zero(alg, 1, 1)).is_zero());

    SplitMix64 rng(1);
    const HilbertModule sub(alg, 2, column_projection(alg, 2, {1, 3}, rng));
    CHECK(sub.complex_dimension() == 1 * 1 + 3 * 2);
    CHECK(compute_ideal(sub).is_full());
    const HilbertModule half(alg, 2, column_projection(alg, 2, {0, 2}, rng));
    CHECK(compute_ideal(half).support() == std::vector<std::size_t>{1});
    CHECK(complex_basis(half).size() == half.complex_dimension());
}

TEST_CASE("module elements stay in pA^n") {
    SplitMix64 rng(2);
    const auto alg = make_algebra({2, 1});
    const HilbertModule e(alg, 2, column_projection(alg, 2, {2, 1}, rng));
    const auto x = oracle::random_element_of(rng, e);
    CHECK_NOTHROW(ModuleElement(e, x.blocks()));
    const auto raw = random_amplified(rng, alg, 2, 1);
    CHECK_THROWS_AS(ModuleElement(e, raw.blocks()), InvalidInput);
    CHECK_THROWS_AS(ModuleElement(e, {Matrix::Zero(1, 1)}), InvalidInput);
}

TEST_CASE("inner product axioms") {
    SplitMix64 rng(3);
    const auto alg = make_algebra({1, 2, 3});
    const HilbertModule e(alg, 2, column_projection(alg, 2, {1, 3, 2}, rng));
    for (int k = 0; k < 25; ++k) {
        const auto x = oracle::random_element_of(rng, e);
        const auto y = oracle::random_element_of(rng, e);
        const auto a = random_element(rng, alg);
        const auto xy = inner_product(x, y);
        CHECK(norm(xy.adjoint() - inner_product(y, x)) < 1e-12);
        CHECK(is_positive(inner_product(x, x), 1e-10));
        CHECK(norm(inner_product(x, right_action(y, a)) - xy * a) < 1e-10 * (1 + norm(xy) * norm(a)));
        for (std::size_t b = 0; b < alg.block_count(); ++b)
            CHECK((xy.block(b) - oracle::inner_block(x.block(b), y.block(b))).norm() < 1e-12);
        // Cauchy-Schwarz in norm form.
        CHECK(norm(xy) <= module_norm(x) * module_norm(y) * (1 + 1e-12));
    }
}

TEST_CASE("orthogonality predicate") {
    const auto alg = make_algebra({2});
    const auto e = HilbertModule::free(alg, 1);
    Matrix x0 = Matrix::Zero(2, 2), y0 = Matrix::Zero(2, 2);
    x0(0, 0) = 1;
    y0(1, 1) = 1;
    const ModuleElement x(e, {x0}), y(e, {y0});
    CHECK(is_orthogonal(x, y, 1e-12));
    CHECK_FALSE(is_orthogonal(x, x, 1e-12));
}

TEST_CASE("map norm equals the brute-force supremum") {
    SplitMix64 rng(4);
    const auto alg = make_algebra({1, 2});
    for (int k = 0; k < 5; ++k) {
        const auto e = HilbertModule::free(alg, 1);
        const auto f = HilbertModule::free(alg, 2);
        const auto phi = random_map(rng, e, f);
        const double exact = map_norm(phi);
        const double sampled = oracle::brute_force_norm(phi, 4000, 100 + k);
        CHECK(sampled <= exact * (1 + 1e-12));
        CHECK(sampled >= 0.99 * exact);
    }
}

TEST_CASE("adjoint map pairs inner products") {
    SplitMix64 rng(5);
    const auto alg = make_algebra({2, 1});
    const HilbertModule e(alg, 2, column_projection(alg, 2, {3, 1}, rng));
    const HilbertModule f(alg, 3, column_projection(alg, 3, {4, 2}, rng));
    const auto phi = random_map(rng, e, f);
    const auto adj = adjoint_map(phi);
    for (int k = 0; k < 20; ++k) {
        const auto x = oracle::random_element_of(rng, e);
        const auto y = oracle::random_element_of(rng, f);
        CHECK(norm(inner_product(phi(x), y) - inner_product(x, adj(y))) < 1e-10);
    }
    CHECK(map_norm(adj) == doctest::Approx(map_norm(phi)).epsilon(1e-12));
    CHECK_THROWS_AS(ModuleMap(e, f, random_amplified(rng, alg, 2, 2)), InvalidInput);
    CHECK_THROWS_AS(ModuleMap(e, HilbertModule::free(make_algebra({3}), 1),
                              random_amplified(rng, alg, 1, 2)),
                    Incompatible);
}

TEST_CASE("kernel dimension matches sampling") {
    SplitMix64 rng(6);
    const auto alg = make_algebra({1, 2, 2});
    for (int k = 0; k < 10; ++k) {
        const HilbertModule e(alg, 2, column_projection(alg, 2, {1, 3, 2}, rng));
        const auto f = HilbertModule::free(alg, 1);
        // A rank-deficient T per block makes the kernel nontrivial.
        std::vector<Matrix> t;
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            const auto nb = alg.block_size(b);
            t.push_back(gaussian_matrix(rng, nb, 1) * gaussian_matrix(rng, 1, 2 * nb));
        }
        const ModuleMap phi(e, f, AmplifiedElement(alg, 1, 2, t));
        const auto sampled = oracle::kernel_by_sampling(phi, 50 + k);
        CHECK(sampled.domain_dimension == e.complex_dimension());
        CHECK(kernel_dimension(phi) == sampled.kernel_dimension);
    }
}

TEST_CASE("image submodule") {
    const auto g = gallery("example-3.6d");
    const auto img = image_submodule(g.map);
    CHECK(img.complex_dimension() == 1);
    CHECK(compute_ideal(img).support() == std::vector<std::size_t>{0});
    CHECK(kernel_dimension(g.map) == 1);
    CHECK(map_norm(g.map) == doctest::Approx(1.0));

    SplitMix64 rng(7);
    const auto alg = make_algebra({2, 3});
    const auto e = HilbertModule::free(alg, 1);
    const auto f = HilbertModule::free(alg, 2);
    const auto phi = random_map(rng, e, f);
    const auto im = image_submodule(phi);
    CHECK(im.complex_dimension() == e.complex_dimension());
    for (int k = 0; k < 10; ++k) {
        const auto y = phi(oracle::random_element_of(rng, e));
        CHECK_NOTHROW(ModuleElement(im, y.blocks(), ToleranceProfile::from_certification(1e-8)));
    }
}

TEST_CASE("compressed maps keep the stored matrix") {
    SplitMix64 rng(8);
    const auto alg = make_algebra({2});
    const HilbertModule e(alg, 2, column_projection(alg, 2, {2}, rng));
    const auto f = HilbertModule::free(alg, 2);
    const auto phi = random_map(rng, e, f);
    const auto again = ModuleMap::compressed(e, f, phi.matrix());
    CHECK(again.matrix().block(0) == phi.matrix().block(0));
    CHECK_THROWS_AS(ModuleMap::compressed(e, f, random_amplified(rng, alg, 2, 2)), InvalidInput);
}

TEST_CASE("compact operators") {
    SplitMix64 rng(9);
    const auto alg = make_algebra({1, 2});
    const HilbertModule e(alg, 2, column_projection(alg, 2, {1, 3}, rng));
    const auto x = oracle::random_element_of(rng, e);
    const auto y = oracle::random_element_of(rng, e);
    const auto z = oracle::random_element_of(rng, e);
    const auto th = theta_operator(y, x);
    const auto lhs = th(z);
    const auto rhs = right_action(y, inner_product(x, z));
    CHECK(module_norm(lhs - rhs) < 1e-12 * (1 + module_norm(rhs)));
    CHECK(norm(th.adjoint().matrix() - theta_operator(x, y).matrix()) < 1e-12);
}

TEST_CASE("right multipliers and identity") {
    SplitMix64 rng(10);
    const auto alg = make_algebra({1, 2});
    const auto e = HilbertModule::free(alg, 2);
    const CentralPositive v(IdealDescriptor::full(alg), {4.0, 0.0});
    const auto rv = right_multiplier(e, v);
    const auto x = oracle::random_element_of(rng, e);
    CHECK(module_norm(rv(x) - right_action(x, v)) == 0.0);
    CHECK(kernel_dimension(rv) == 2 * 2 * 2);
    CHECK(module_norm(identity_map(e)(x) - x) == 0.0);
    CHECK(map_norm(rv) == doctest::Approx(4.0));
}
