#include <doctest.h>

#include "umx/suites.hpp"

using namespace umx;

TEST_CASE("every suite passes on a seeded corpus") {
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        SuiteResult r = run_suite(name, 25, 42, 10);
        CHECK(r.passed());
        CHECK(r.instances == 25);
        CHECK(r.checks > 0);
        if (!r.passed())
            MESSAGE(name, ": ", r.failures.front().description);
    }
}

TEST_CASE("run_suites(all) covers the full list") {
    std::vector<SuiteResult> all = run_suites("all", 5, 1, 8);
    CHECK(all.size() == suite_names().size());
    for (const auto& r : all) CHECK(r.passed());
    CHECK_THROWS_AS(run_suite("nope", 1, 1, 8), PreconditionFailed);
}

TEST_CASE("suites run on degenerate one-pair instances") {
    // Smallest allowed corpus: tiny spaces still have separated pairs.
    std::vector<SuiteResult> all = run_suites("all", 1, 0, 2);
    for (const auto& r : all) CHECK(r.passed());
}

TEST_CASE("suite results are deterministic in the seed") {
    const Json a = suite_result_json(run_suite("thm28", 10, 9, 9));
    const Json b = suite_result_json(run_suite("thm28", 10, 9, 9));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("classifier histogram accounts for every instance") {
    SuiteResult r = run_suite("thm28", 40, 3, 10);
    REQUIRE(r.passed());
    std::uint64_t total = 0;
    for (const auto& [key, value] : r.stats)
        if (key.rfind("statement_", 0) == 0) total += value;
    CHECK(total == 40);
}

TEST_CASE("equivalence suite actually exercises non-separated pairs") {
    SuiteResult r = run_suite("thm25", 50, 5, 10);
    REQUIRE(r.passed());
    CHECK(r.stats.at("separated_instances") == 50);
    CHECK(r.stats.count("non_separated_instances") == 1);
    CHECK(r.stats.at("non_separated_instances") >= 45);  // bias works
}

TEST_CASE("suite reports serialize failures for replay") {
    SuiteResult r;
    r.name = "demo";
    r.instances = 3;
    r.checks = 3;
    r.failures.push_back({2, "demo failure", Json{{"space", "payload"}}});
    const Json j = suite_result_json(r);
    CHECK(j["passed"] == false);
    CHECK(j["failures"][0]["instance"] == 2);
    CHECK(j["failures"][0]["repro"]["space"] == "payload");
}

TEST_CASE("the exhaustive small-space search finds no strictly contractive map") {
    ExhaustiveSearchResult res = exhaustive_strict_contraction_search(4);
    CHECK(res.spaces > 0);
    CHECK(res.pairs > 0);
    CHECK(res.maps > 0);
    CHECK(res.strictly_contractive_found == 0);
}
