#include <algorithm>

#include "doctest.h"
#include "opmod/analysis.hpp"
#include "opmod/serialize.hpp"
#include "opmod/suites.hpp"

using namespace opmod;

TEST_CASE("certified gallery entry") {
    const auto r = analyze(gallery("example-3.6d"));
    CHECK(r.verdict == Verdict::certified);
    CHECK(exit_code(r.verdict) == 0);
    REQUIRE(r.certificate);
    CHECK(r.certificate->u == std::vector<double>{1.0, 0.0});
    CHECK(r.certificate->residual == 0.0);
    REQUIRE(r.injectivity);
    CHECK(r.injectivity->kernel_dimension == 1);
    REQUIRE(r.bijective);
    CHECK_FALSE(r.bijective->applicable);
    CHECK(r.bijective->reason.find("not injective") != std::string::npos);
    CHECK_FALSE(r.violation);
    CHECK_NOTHROW(validate_report(r));
}

TEST_CASE("bijective plant") {
    const auto r = analyze(gen_planted_instance(4, {}, true));
    CHECK(r.verdict == Verdict::certified);
    REQUIRE(r.bijective);
    CHECK(r.bijective->applicable);
    CHECK(r.bijective->psi_isometry_residual < 1e-10);
    REQUIRE(r.norms);
    CHECK(std::abs(r.norms->gap) < 1e-9);
    REQUIRE(r.linking);
    CHECK(r.linking->worst < 1e-9);
    CHECK(r.certificate->permutation_gap < 1e-9);
    CHECK(r.certificate->fresh_sample_residual < 1e-8);
}

TEST_CASE("rejected instance carries a violating pair") {
    const auto r = analyze(gen_adversarial_instance(7));
    CHECK(r.verdict == Verdict::rejected);
    CHECK(exit_code(r.verdict) == 2);
    REQUIRE(r.rejection);
    REQUIRE(r.violation);
    CHECK(r.violation->inner_norm <= 1e-10);
    CHECK(r.violation->violation > 1e-6);
    CHECK(r.violation->linking_after > 1e-6);
    CHECK_FALSE(r.certificate);
    CHECK_FALSE(r.linking);
}

TEST_CASE("exit codes") {
    CHECK(exit_code(Verdict::certified) == 0);
    CHECK(exit_code(Verdict::rejected) == 2);
    CHECK(exit_code(Verdict::exhausted_search) == 2);
    for (auto v : {Verdict::certified, Verdict::rejected, Verdict::exhausted_search})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("maybe"), Error);
}

TEST_CASE("reports are deterministic apart from timing") {
    AnalysisOptions opt;
    opt.seed = 3;
    auto a = analyze(gen_planted_instance(9), opt);
    auto b = analyze(gen_planted_instance(9), opt);
    a.timing_ms = b.timing_ms = 0.0;
    CHECK(a == b);
    CHECK(report_to_string(a) == report_to_string(b));
}

TEST_CASE("human format mentions the verdict and witness") {
    const auto text = format_human(analyze(gallery("example-3.6d")));
    CHECK(text.find("certified") != std::string::npos);
    CHECK(text.find("diagnosis") != std::string::npos);
    const auto rej = format_human(analyze(gen_adversarial_instance(7)));
    CHECK(rej.find("rejected") != std::string::npos);
}

TEST_CASE("validate_report rejects inconsistent payloads") {
    auto r = analyze(gallery("example-3.6d"));
    r.certificate.reset();
    CHECK_THROWS_AS(validate_report(r), ValidationError);
}

TEST_CASE("degradation on the half-open interval") {
    const std::vector<int> grids{4, 8, 16, 32};
    const auto rows = degradation("interval-C0-halfopen", grids);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].grid == grids[i]);
        CHECK(rows[i].w_inverse_norm == doctest::Approx(grids[i]).epsilon(1e-12));
        CHECK(rows[i].psi_isometry_residual < 1e-10);
    }
    const auto csv = format_degradation(rows, true);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK_THROWS_AS(degradation("interval-C0-halfopen", std::vector<int>{}), InvalidInput);
}

TEST_CASE("property suites pass") {
    for (const auto& s : suite_names()) {
        if (s == "all") continue;
        const auto results = run_suite(s, 1, 10);
        CHECK_FALSE(results.empty());
        for (const auto& r : results) {
            INFO(r.suite << "/" << r.name << " worst " << r.worst << " threshold " << r.threshold);
            CHECK(r.pass);
        }
    }
    CHECK_THROWS_AS(run_suite("nope", 0, 1), InvalidInput);
}
