#include "doctest.h"
#include "oracles.hpp"
#include "opmod/algebra.hpp"
#include "opmod/random.hpp"

using namespace opmod;

namespace {

Matrix unit_matrix(int n, int i, int j) {
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

AlgebraElement diag_c(const FdCStarAlgebra& alg, std::vector<double> v) {
    std::vector<Complex> z(v.begin(), v.end());
    return AlgebraElement::central(alg, z);
}

}  // namespace

TEST_CASE("make_algebra validates block lists") {
    CHECK(make_algebra({1, 1}).block_count() == 2);
    CHECK(make_algebra({2}).dimension() == 4);
    CHECK(make_algebra({1, 1, 1, 1}).dimension() == 4);
    CHECK_THROWS_AS(make_algebra({}), InvalidInput);
    CHECK_THROWS_AS(make_algebra({2, 0}), InvalidInput);
    CHECK_THROWS_AS(make_algebra({-1}), InvalidInput);
}

TEST_CASE("blockwise arithmetic") {
    const auto m2 = make_algebra({2});
    const AlgebraElement e11(m2, {unit_matrix(2, 0, 0)});
    const AlgebraElement e22(m2, {unit_matrix(2, 1, 1)});
    CHECK(norm(element_arithmetic(e11, e22, ArithmeticOp::mul)) == 0.0);

    const auto i_id = AlgebraElement::identity(m2).scaled(Complex(0, 1));
    const auto adj = element_arithmetic(i_id, i_id, ArithmeticOp::adjoint);
    CHECK(norm(adj - AlgebraElement::identity(m2).scaled(Complex(0, -1))) == 0.0);

    const auto cc = make_algebra({1, 1});
    CHECK(norm(diag_c(cc, {1, 0}) * diag_c(cc, {0, 1})) == 0.0);
    CHECK(norm(element_arithmetic(e11, e22, ArithmeticOp::add) - AlgebraElement::identity(m2)) == 0.0);
    CHECK(norm(element_arithmetic(e11, e11, ArithmeticOp::scale, 3.0) - e11.scaled(3.0)) == 0.0);

    CHECK_THROWS_AS(e11 + diag_c(cc, {1, 1}), Incompatible);
    CHECK_THROWS_AS(AlgebraElement(m2, {Matrix::Zero(3, 3)}), InvalidInput);
}

TEST_CASE("C*-norm") {
    CHECK(norm(AlgebraElement::identity(make_algebra({3, 1}))) == doctest::Approx(1.0));
    CHECK(norm(diag_c(make_algebra({1, 1, 1, 1}), {0.25, 0.5, 0.75, 1.0})) == doctest::Approx(1.0));
    // e12 has singular values (1, 0).
    CHECK(norm(AlgebraElement(make_algebra({2}), {unit_matrix(2, 0, 1)})) == doctest::Approx(1.0));

    SplitMix64 rng(3);
    for (int k = 0; k < 25; ++k) {
        const auto a = random_element(rng, make_algebra({1, 2, 3}));
        const double n = norm(a);
        CHECK(std::abs(norm(a.adjoint() * a) - n * n) <= 1e-10 * std::max(1.0, n * n));
    }
}

TEST_CASE("is_positive") {
    const auto alg = make_algebra({2, 1});
    CHECK(is_positive(AlgebraElement::identity(alg), 0.0));
    CHECK_FALSE(is_positive(AlgebraElement::identity(alg).scaled(-1.0), 1e-12));
    SplitMix64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_element(rng, alg);
        CHECK(is_positive(x.adjoint() * x, 1e-12));
    }
    CHECK_FALSE(is_positive(AlgebraElement(make_algebra({2}), {unit_matrix(2, 0, 1)}), 1e-12));
}

TEST_CASE("spectral projections") {
    const auto c3 = make_algebra({1, 1, 1});
    const auto a = diag_c(c3, {0.0, 0.3, 0.8});
    const auto p = spectral_projection(a, 0.5, 1.0, IntervalKind::open_closed);
    CHECK(norm(p.projection - diag_c(c3, {0, 0, 1})) == 0.0);
    CHECK_FALSE(p.ambiguous());

    const auto alg = make_algebra({2, 3});
    CHECK(norm(spectral_projection(AlgebraElement::identity(alg), 0, 1, IntervalKind::open_closed).projection -
               AlgebraElement::identity(alg)) < 1e-12);
    CHECK(norm(spectral_projection(AlgebraElement::zero(alg), 0, 1, IntervalKind::open_closed).projection) == 0.0);
    // open_open drops an eigenvalue sitting on the right endpoint.
    CHECK(norm(spectral_projection(AlgebraElement::identity(alg), 0, 1, IntervalKind::open_open).projection) == 0.0);

    CHECK_THROWS_AS(spectral_projection(AlgebraElement::identity(alg).scaled(-1.0), 0, 1, IntervalKind::open_closed),
                    DomainError);
    CHECK_THROWS_AS(spectral_projection(AlgebraElement::identity(alg), 1, 0, IntervalKind::open_closed), InvalidInput);

    // Eigenvalue within the tolerance of an endpoint produces a warning, not an error.
    const auto near = diag_c(c3, {0.5 + 1e-12, 0.2, 0.9});
    const auto w = spectral_projection(near, 0.5, 1.0, IntervalKind::open_closed);
    CHECK(w.ambiguous());
    CHECK(norm(w.projection - diag_c(c3, {0, 0, 1})) == 0.0);
}

TEST_CASE("spectral projection against closed-form 2x2 eigenvalues") {
    SplitMix64 rng(17);
    const auto m2 = make_algebra({2});
    for (int k = 0; k < 50; ++k) {
        const Matrix g = gaussian_matrix(rng, 2, 2);
        Matrix h = g * g.adjoint();
        h /= spectral_norm(h);
        const double delta = rng.uniform(0.05, 0.95);
        const auto [lo, hi] = oracle::eig2(h);
        const auto sp = spectral_projection(AlgebraElement(m2, {h}), delta, 1.0, IntervalKind::open_closed);
        if (sp.ambiguous()) continue;
        const int expected_rank = (lo > delta ? 1 : 0) + (hi > delta ? 1 : 0);
        CHECK(std::abs(sp.projection.block(0).trace().real() - expected_rank) < 1e-10);
        CHECK(is_projection(sp.projection, 1e-10));
    }
}

TEST_CASE("spectral partition when no eigenvalue is near the cut") {
    SplitMix64 rng(23);
    const auto alg = make_algebra({3, 2});
    for (int k = 0; k < 30; ++k) {
        auto a = random_element(rng, alg);
        a = a.adjoint() * a;
        a = a.scaled(1.0 / norm(a));
        const double d = rng.uniform(0.1, 0.9);
        const auto x = spectral_projection(a, 0, d, IntervalKind::open_closed);
        const auto y = spectral_projection(a, d, 1, IntervalKind::open_closed);
        const auto z = spectral_projection(a, 0, 1, IntervalKind::open_closed);
        if (x.ambiguous() || y.ambiguous()) continue;
        CHECK(norm(x.projection + y.projection - z.projection) < 1e-10);
    }
}

TEST_CASE("support projection") {
    const auto c2 = make_algebra({1, 1});
    CHECK(norm(support_projection(diag_c(c2, {0.2, 0.0})) - diag_c(c2, {1, 0})) < 1e-15);
    const auto alg = make_algebra({2, 3});
    CHECK(norm(support_projection(AlgebraElement::identity(alg)) - AlgebraElement::identity(alg)) < 1e-12);
    CHECK(norm(support_projection(AlgebraElement::zero(alg))) == 0.0);

    SplitMix64 rng(29);
    for (int k = 0; k < 30; ++k) {
        // Rank-deficient positive element.
        std::vector<Matrix> blocks;
        for (int nb : alg.blocks()) {
            const Matrix g = gaussian_matrix(rng, nb, rng.uniform_int(0, nb));
            blocks.push_back(g * g.adjoint());
        }
        const AlgebraElement a(alg, blocks);
        const auto q = support_projection(a);
        CHECK(norm(a * q - a) <= 1e-10 * std::max(1.0, norm(a)));
        CHECK(norm(q * a - a) <= 1e-10 * std::max(1.0, norm(a)));
        CHECK(is_projection(q, 1e-10));
        for (std::size_t b = 0; b < alg.block_count(); ++b)
            CHECK(std::lround(q.block(b).trace().real()) == static_cast<long>(oracle::rank_of(a.block(b))));
    }
}

TEST_CASE("center basis") {
    const auto c2 = make_algebra({1, 1});
    const auto basis = center_basis(IdealDescriptor::full(c2));
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].scalars() == std::vector<double>{1, 0});
    CHECK(basis[1].scalars() == std::vector<double>{0, 1});
    const auto m2 = make_algebra({2});
    const auto one = center_basis(IdealDescriptor::full(m2));
    REQUIRE(one.size() == 1);
    CHECK(norm(one[0].to_element() - AlgebraElement::identity(m2)) == 0.0);
    CHECK(center_basis(IdealDescriptor::empty(c2)).empty());
}

TEST_CASE("central cover") {
    const auto alg = make_algebra({2, 1});
    const AlgebraElement a(alg, {unit_matrix(2, 0, 0), Matrix::Zero(1, 1)});
    const auto c = central_cover(a);
    CHECK(norm(c - AlgebraElement(alg, {Matrix::Identity(2, 2), Matrix::Zero(1, 1)})) == 0.0);
    CHECK(norm(central_cover(AlgebraElement::zero(alg))) == 0.0);
    const auto z = AlgebraElement(alg, {Matrix::Zero(2, 2), Matrix::Identity(1, 1)});
    CHECK(norm(central_cover(z) - z) == 0.0);

    // Minimality by enumeration of the 2^B central projections.
    SplitMix64 rng(31);
    const auto big = make_algebra({1, 2, 1, 3, 2});
    for (int k = 0; k < 20; ++k) {
        std::vector<Matrix> blocks;
        for (int nb : big.blocks())
            blocks.push_back(rng.uniform() < 0.5 ? Matrix(Matrix::Zero(nb, nb)) : gaussian_matrix(rng, nb, nb));
        const AlgebraElement x(big, blocks);
        const auto cov = central_cover(x);
        CHECK(norm(cov * x - x) == 0.0);
        for (unsigned mask = 0; mask < 32; ++mask) {
            std::vector<Complex> s(5);
            for (int b = 0; b < 5; ++b) s[b] = (mask >> b) & 1U ? 1.0 : 0.0;
            const auto zz = AlgebraElement::central(big, s);
            if (norm(zz * x - x) == 0.0) CHECK(norm(cov * zz - cov) == 0.0);
        }
    }
}

TEST_CASE("ideals") {
    const auto c2 = make_algebra({1, 1});
    const std::vector<AlgebraElement> s1{diag_c(c2, {1, 0})};
    CHECK(ideal_generated_by(c2, s1).support() == std::vector<std::size_t>{0});
    const std::vector<AlgebraElement> s2{AlgebraElement::identity(c2)};
    CHECK(ideal_generated_by(c2, s2).is_full());
    CHECK(ideal_generated_by(c2, {}).support().empty());
    const std::vector<AlgebraElement> mixed{AlgebraElement::identity(c2), AlgebraElement::identity(make_algebra({2}))};
    CHECK_THROWS_AS(ideal_generated_by(c2, mixed), Incompatible);

    const IdealDescriptor i(make_algebra({1, 2, 3}), {2, 0, 2});
    CHECK(i.support() == std::vector<std::size_t>{0, 2});
    CHECK(i.contains(2));
    CHECK_FALSE(i.contains(1));
    CHECK(i.intersect(IdealDescriptor(i.algebra(), {1, 2})).support() == std::vector<std::size_t>{2});
    CHECK(IdealDescriptor(i.algebra(), {2}).is_subset_of(i));
    CHECK_THROWS_AS(IdealDescriptor(i.algebra(), {3}), InvalidInput);
}

TEST_CASE("central positive elements") {
    const auto alg = make_algebra({1, 2, 1});
    const IdealDescriptor i(alg, {0, 1});
    const CentralPositive u(i, {4.0, 0.25, 0.0});
    CHECK(u.norm() == 4.0);
    CHECK(u.sqrt().scalars() == std::vector<double>{2.0, 0.5, 0.0});
    CHECK(u.pseudo_inverse(1e-12).scalars() == std::vector<double>{0.25, 4.0, 0.0});
    CHECK(u.support(1e-12).support() == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(CentralPositive(i, {1.0, -1.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(CentralPositive(i, {1.0, 1.0, 1.0}), InvalidInput);
}

TEST_CASE("central lift of b = sum beta_b p_b") {
    SplitMix64 rng(37);
    const auto alg = make_algebra({3, 1, 2});
    for (int k = 0; k < 40; ++k) {
        std::vector<Matrix> ps, bs;
        for (int nb : alg.blocks()) {
            const auto r = rng.uniform_int(0, nb);
            Matrix p = Matrix::Zero(nb, nb);
            if (r > 0) {
                const Matrix v = random_isometry(rng, nb, r);
                p = v * v.adjoint();
            }
            bs.push_back(rng.uniform(0, 2) * p);
            ps.push_back(p);
        }
        const AlgebraElement p(alg, ps), b(alg, bs);
        const auto v = central_lift(b, p);
        CHECK(std::abs(v.norm() - norm(b)) <= 1e-10);
        CHECK(norm(v.to_element() * p - b) <= 1e-10);
    }
    const auto m2 = make_algebra({2});
    const AlgebraElement p(m2, {unit_matrix(2, 0, 0)});
    CHECK_THROWS_AS(central_lift(AlgebraElement(m2, {unit_matrix(2, 0, 1)}), p), DomainError);
}

TEST_CASE("amplified elements") {
    const auto alg = make_algebra({1, 2});
    const auto a = AlgebraElement(alg, {Matrix::Constant(1, 1, 2.0), unit_matrix(2, 0, 1)});
    const auto d = AmplifiedElement::diagonal(a, 3);
    CHECK(d.rows() == 3);
    CHECK(d.block(1).rows() == 6);
    CHECK(norm(d.entry(1, 1) - a) == 0.0);
    CHECK(norm(d.entry(0, 2)) == 0.0);
    CHECK(norm(d) == doctest::Approx(2.0));
    CHECK(is_projection(AmplifiedElement::identity(alg, 2), 1e-12));

    SplitMix64 rng(41);
    const auto x = random_amplified(rng, alg, 2, 3);
    const auto y = random_amplified(rng, alg, 3, 2);
    // Entry (i, j) of xy equals sum_k x_ik y_kj.
    const auto xy = x * y;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            AlgebraElement sum = AlgebraElement::zero(alg);
            for (std::size_t k = 0; k < 3; ++k) sum = sum + x.entry(i, k) * y.entry(k, j);
            CHECK(norm(xy.entry(i, j) - sum) < 1e-12);
        }
    }
    CHECK(norm(x.adjoint().entry(2, 1) - x.entry(1, 2).adjoint()) == 0.0);
    CHECK_THROWS_AS(x * x, Incompatible);
}

TEST_CASE("rank helpers") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-14;
    CHECK(numerical_rank(m, 1e-10) == 1);
    const Matrix p = column_space_projector(m, 1e-10);
    CHECK(std::abs(p.trace().real() - 1.0) < 1e-14);
    Matrix proj = Matrix::Zero(3, 3);
    proj(2, 2) = 1.0;
    proj(0, 0) = 1.0;
    CHECK(projection_range(proj).cols() == 2);
}
