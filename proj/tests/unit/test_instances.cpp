#include <set>

#include "doctest.h"
#include "opmod/instances.hpp"
#include "opmod/preserver.hpp"
#include "opmod/serialize.hpp"

using namespace opmod;

TEST_CASE("algebra generation") {
    CHECK(gen_algebra(0, 1, 1).blocks() == std::vector<int>{1});
    CHECK(gen_algebra(17, 3, 4) == gen_algebra(17, 3, 4));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto a = gen_algebra(s, 3, 4);
        CHECK(a.block_count() >= 1);
        CHECK(a.block_count() <= 3);
        for (int nb : a.blocks()) CHECK((nb >= 1 && nb <= 4));
    }
    CHECK_THROWS_AS(gen_algebra(0, 0, 3), InvalidInput);
    CHECK_THROWS_AS(gen_algebra(0, 2, 0), InvalidInput);
}

TEST_CASE("distinct seeds give distinct instances") {
    std::set<std::string> docs;
    for (std::uint64_t s = 0; s < 20; ++s) docs.insert(instance_to_string(gen_planted_instance(s)));
    CHECK(docs.size() == 20);
    CHECK(instance_to_string(gen_planted_instance(4)) == instance_to_string(gen_planted_instance(4)));
    CHECK(instance_to_string(gen_adversarial_instance(4)) == instance_to_string(gen_adversarial_instance(4)));
}

TEST_CASE("generated modules have the requested ranks") {
    SplitMix64 rng(1);
    const auto alg = make_algebra({2, 3});
    const auto e = gen_module(rng, alg, 2, {1, 5});
    CHECK(e.block_rank(0) == 1);
    CHECK(e.block_rank(1) == 5);
    CHECK_THROWS_AS(gen_module(rng, alg, 2, {5, 1}), InvalidInput);
    CHECK_THROWS_AS(gen_module(rng, alg, 2, {0, 0}), ZeroModule);
}

TEST_CASE("planted preservers need room in the codomain") {
    SplitMix64 rng(2);
    const auto alg = make_algebra({2});
    const auto e = gen_module(rng, alg, 2, {3});
    const auto f = gen_module(rng, alg, 1, {1});
    CHECK_THROWS_AS(gen_planted_preserver(3, e, f, {1.0}), GenerationError);
    // lambda = 0 needs no room at all.
    CHECK_NOTHROW(gen_planted_preserver(3, e, f, {0.0}));
}

TEST_CASE("planted bundles validate and carry provenance") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto b = gen_planted_instance(s);
        CHECK_NOTHROW(validate_bundle(b));
        CHECK(b.provenance == "planted-preserver");
        CHECK(b.seed == s);
        REQUIRE(b.planted_u);
        CHECK(b.planted_u->norm() > 0.0);
        const auto inv = gen_planted_instance(s, {}, true);
        const auto ideal = compute_ideal(inv.domain);
        for (auto blk : ideal.support()) CHECK(inv.planted_u->scalar(blk) >= 0.25);
    }
    const auto adv = gen_adversarial_instance(1);
    CHECK(adv.provenance == "adversarial");
    CHECK_FALSE(adv.planted_u);
}

TEST_CASE("perturbed bundles note the noise") {
    SplitMix64 rng(3);
    const auto alg = make_algebra({2});
    const auto e = gen_module(rng, alg, 2, {2});
    const auto f = gen_module(rng, alg, 2, {3});
    const auto b = gen_perturbed(4, e, f, 1e-3);
    CHECK(b.provenance == "perturbed");
    CHECK_FALSE(b.notes.empty());
}

TEST_CASE("gallery") {
    const auto names = gallery_names();
    CHECK(names.size() == 5);
    for (const auto& n : names) {
        const auto b = gallery(n);
        CHECK_NOTHROW(validate_bundle(b));
        CHECK(b.provenance.rfind("gallery:" + n, 0) == 0);
        CHECK(is_certified(extract_witness(b.map)));
    }

    const auto d = gallery("example-3.6d");
    CHECK(d.algebra.blocks() == std::vector<int>{1, 1});
    REQUIRE(d.planted_u);
    CHECK(d.planted_u->scalars() == std::vector<double>{1.0, 0.0});

    CHECK(gallery("conjugate-module(4)").algebra.blocks() == std::vector<int>{4});
    CHECK(gallery("interval-C01(16)").algebra.block_count() == 17);
    CHECK(gallery("interval-C0-halfopen(16)").algebra.block_count() == 16);
    CHECK(gallery("vanishing-at-midpoint(6)").algebra.block_count() == 5);

    CHECK_THROWS_AS(gallery("no-such-entry"), InvalidInput);
    CHECK_THROWS_AS(gallery("interval-C01(0)"), InvalidInput);
    CHECK_THROWS_AS(gallery("vanishing-at-midpoint(5)"), InvalidInput);
}

TEST_CASE("interval gallery witnesses") {
    const auto h = gallery("interval-C0-halfopen(8)");
    const auto out = extract_witness(h.map);
    REQUIRE(is_certified(out));
    const auto& u = certificate_of(out).u;
    // a(t) = t on the grid t = (i + 1) / N, u = a^2.
    for (std::size_t i = 0; i < 8; ++i) CHECK(u.scalar(i) == doctest::Approx(((i + 1) / 8.0) * ((i + 1) / 8.0)));
    CHECK(kernel_dimension(h.map) == 0);

    const auto c01 = gallery("interval-C01(8)");
    CHECK(kernel_dimension(c01.map) == 1);
}
