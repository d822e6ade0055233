#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "opmod/analysis.hpp"
#include "opmod/serialize.hpp"

using namespace opmod;
using json = nlohmann::ordered_json;

namespace {

bool same_matrices(const AmplifiedElement& a, const AmplifiedElement& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.blocks().size(); ++k)
        if (a.block(k) != b.block(k)) return false;
    return true;
}

template <class Exc>
std::string field_of(const std::string& text) {
    try {
        instance_from_string(text);
    } catch (const Exc& e) {
        if constexpr (std::is_same_v<Exc, ValidationError>) return e.field();
        return "thrown";
    }
    return "";
}

}  // namespace

TEST_CASE("instances round-trip bit for bit") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const InstanceBundle b = s % 3 == 2 ? gen_adversarial_instance(s) : gen_planted_instance(s, {}, s % 3 == 1);
        const std::string text = instance_to_string(b);
        const InstanceBundle back = instance_from_string(text);
        CHECK(back.algebra == b.algebra);
        CHECK(same_matrices(back.domain.projection(), b.domain.projection()));
        CHECK(same_matrices(back.codomain.projection(), b.codomain.projection()));
        CHECK(same_matrices(back.map.matrix(), b.map.matrix()));
        CHECK(back.seed == b.seed);
        CHECK(back.provenance == b.provenance);
        CHECK(back.notes == b.notes);
        CHECK(back.planted_u.has_value() == b.planted_u.has_value());
        if (b.planted_u) CHECK(back.planted_u->scalars() == b.planted_u->scalars());
        CHECK(instance_to_string(back) == text);
    }
}

TEST_CASE("gallery documents are byte-stable") {
    for (const auto& n : gallery_names()) CHECK(instance_to_string(gallery(n)) == instance_to_string(gallery(n)));
}

TEST_CASE("malformed documents") {
    const std::string good = instance_to_string(gallery("example-3.6d"));

    SUBCASE("syntax error reports an offset") {
        const std::string bad = good.substr(0, 40);
        try {
            instance_from_string(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() > 0);
            CHECK(e.offset() <= bad.size() + 1);
        }
        CHECK_THROWS_AS(instance_from_string("{\"schema\": 1,,}"), ParseError);
        CHECK_THROWS_AS(instance_from_string(""), FormatError);
    }

    SUBCASE("corrupt projection") {
        auto j = json::parse(good);
        j["module"]["p"][0][0][0] = json::array({0.5, 0.0});
        CHECK(field_of<ValidationError>(j.dump()) == "module.p");
    }

    SUBCASE("empty block list") {
        auto j = json::parse(good);
        j["algebra"]["blocks"] = json::array();
        CHECK(field_of<ValidationError>(j.dump()) == "algebra.blocks");
    }

    SUBCASE("unknown field") {
        auto j = json::parse(good);
        j["extra"] = 1;
        CHECK(field_of<ValidationError>(j.dump()) == "extra");
        auto k = json::parse(good);
        k["module"]["q"] = 1;
        CHECK(field_of<ValidationError>(k.dump()) == "module.q");
    }

    SUBCASE("missing field") {
        auto j = json::parse(good);
        j.erase("map");
        CHECK(field_of<ValidationError>(j.dump()) == "map");
    }

    SUBCASE("wrong schema version") {
        auto j = json::parse(good);
        j["schema"] = 2;
        CHECK(field_of<ValidationError>(j.dump()) == "schema");
    }

    SUBCASE("map outside the modules") {
        auto j = json::parse(good);
        // Put mass on the second block, where the codomain projection vanishes.
        j["map"][1][0][0] = json::array({1.0, 0.0});
        CHECK(field_of<ValidationError>(j.dump()) == "map");
    }
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "opmod_serialize_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "bundle.json";
    const auto b = gen_planted_instance(12);
    save_instance(path, b);
    CHECK(instance_to_string(load_instance(path)) == instance_to_string(b));
    CHECK_THROWS_AS(load_instance(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("reports round-trip") {
    AnalysisOptions opt;
    opt.linking_pairs = 3;
    opt.samples = 8;
    for (const auto& bundle : {gallery("example-3.6d"), gen_planted_instance(2, {}, true), gen_adversarial_instance(7)}) {
        const auto report = analyze(bundle, opt);
        const std::string text = report_to_string(report);
        const auto back = report_from_string(text);
        CHECK(back.verdict == report.verdict);
        CHECK(back.certificate == report.certificate);
        CHECK(back.rejection == report.rejection);
        CHECK(back.violation == report.violation);
        CHECK(back.norms == report.norms);
        CHECK(back.bijective == report.bijective);
        CHECK(back.linking == report.linking);
        CHECK(back == report);
        CHECK(report_to_string(back) == text);
    }
    CHECK_THROWS_AS(report_from_string("{\"schema\": 1}"), ValidationError);
}
