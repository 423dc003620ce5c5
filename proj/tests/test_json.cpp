#include <doctest.h>

#include "umx/json_io.hpp"

using namespace umx;

TEST_CASE("space document round trip is byte exact") {
    Example29 ex = example29();
    const Json doc = space_json(*ex.space);
    ValidationResult vr = space_from_json(doc);
    REQUIRE(vr.ok());
    CHECK(*vr.space == *ex.space);
    CHECK(space_json(*vr.space).dump() == doc.dump());
}

TEST_CASE("space document schema is strict") {
    CHECK_THROWS_AS(space_from_json(Json::array()), ParseError);
    CHECK_THROWS_AS(space_from_json(Json{{"points", Json::array({"x"})}}), ParseError);
    CHECK_THROWS_AS(space_from_json(Json{{"points", Json::array({"x"})},
                                         {"dist", Json::array({Json::array({"0"})})},
                                         {"extra", 1}}),
                    ParseError);
    CHECK_THROWS_AS(space_from_json(Json{{"points", Json::array()},
                                         {"dist", Json::array()}}),
                    ParseError);
}

TEST_CASE("non-canonical rationals are rejected with a descriptive error") {
    Json doc{{"points", Json::array({"x", "y"})},
             {"dist", Json::array({Json::array({"0", "2/4"}), Json::array({"2/4", "0"})})}};
    CHECK_THROWS_WITH_AS(space_from_json(doc),
                         "dist[0][1]: non-canonical rational \"2/4\": reduce to lowest terms",
                         ParseError);

    doc["dist"][0][1] = 0.5;
    CHECK_THROWS_AS(space_from_json(doc), ParseError);  // numbers are not accepted
}

TEST_CASE("pair fragment parse and errors") {
    Example29 ex = example29();
    Json frag = pair_json(ex.A, ex.B);
    PairSelection sel = pair_from_json(ex.space, frag);
    CHECK(sel.A == ex.A);
    CHECK(sel.B == ex.B);

    Json unknown{{"A", Json::array({"nope"})}, {"B", Json::array({"b1"})}};
    CHECK_THROWS_AS(pair_from_json(ex.space, unknown), UnknownLabelError);
    Json empty{{"A", Json::array()}, {"B", Json::array({"b1"})}};
    CHECK_THROWS_AS(pair_from_json(ex.space, empty), EmptySetError);
}

TEST_CASE("map document round trip and errors") {
    Example29 ex = example29();
    const Json doc = map_json(ex.maps[1]);
    SelfMap F = map_from_json(ex.space, doc);
    CHECK(F == ex.maps[1]);
    CHECK(map_json(F).dump() == doc.dump());

    Json missing{{"domain", Json::array({"a1", "a2"})}, {"table", Json{{"a1", "a2"}}}};
    CHECK_THROWS_AS(map_from_json(ex.space, missing), ParseError);
    Json escapes{{"domain", Json::array({"a1", "a2"})},
                 {"table", Json{{"a1", "b1"}, {"a2", "a1"}}}};
    CHECK_THROWS_AS(map_from_json(ex.space, escapes), ParseError);
}

TEST_CASE("reports serialize rationals as strings and sets as sorted labels") {
    Example29 ex = example29();
    const Json rep = proximity_report_json(proximity_sets(ex.A, ex.B));
    CHECK(rep["dist"] == "2");
    CHECK(rep["A0"] == Json::array({"a1", "a2"}));
    CHECK(rep["pairs"].size() == 4);
    CHECK(rep["separated"] == true);

    const Json cls = classification_json(
        *ex.space, classify_theorem28(ex.maps[3], ex.A, ex.B));
    CHECK(cls["statement"] == "iv");
    CHECK(cls["ballA"]["members"] == Json::array({"a1", "a2"}));
    CHECK(cls["ballB"]["radius"] == "1");

    const Json t25 = theorem25_json(*ex.space, theorem25_report(ex.A, ex.B));
    CHECK(t25["stmt_i"]["witness"] == "a1");
    CHECK(t25["equivalent"] == true);
}

TEST_CASE("probe reports carry a serialized counterexample slot") {
    ProbeReport rep = probe_conjecture_115(3, 2, 11);
    const Json j = probe_report_json(rep);
    CHECK(j["instances_checked"] == 6);
    CHECK(j["counterexample"].is_null());
    CHECK(j.contains("interpretation"));
}
