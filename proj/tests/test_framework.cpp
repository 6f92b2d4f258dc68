/*
 * Copyright 2026 the tbaf authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "tbaf/framework.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace tbaf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(std::string(TBAF_DATA_DIR) + "/" + path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TBAF abstract_example() { return load_tbaf_json(slurp("abstract.json")); }
TBAF apartment_example() { return load_tbaf_json(slurp("apartment.json")); }

}  // namespace

TEST_CASE("loading the bundled corpus") {
    TBAF abs = abstract_example();
    CHECK(abs.baf.arguments.size() == 10);
    CHECK(abs.baf.attacks.size() == 6);
    CHECK(abs.baf.supports.size() == 4);
    CHECK(abs.av("J") == parse_interval_set("[0-90)"));
    CHECK(abs.av("I") == parse_interval_set("(70-110]"));

    TBAF apt = apartment_example();
    CHECK(apt.baf.arguments.size() == 10);
    CHECK(validate(apt).ok());

    TBAF intro = load_tbaf_json(slurp("intro.json"));
    CHECK(intro.baf.arguments.size() == 6);
    CHECK(intro.av("I").contains(Rational(999999)));
    // T participates in no relation; the framework still validates.
    CHECK(validate(intro).ok());
}

TEST_CASE("validation report") {
    TBAF apt = apartment_example();
    CHECK(validate(apt).ok());

    TBAF overlap = apt;
    overlap.baf.supports.push_back({"D", "A"});
    overlap.baf.canonicalize();
    ValidationReport r = validate(overlap);
    CHECK_FALSE(r.ok());
    bool saw_overlap = false;
    for (const auto& issue : r.issues)
        if (issue.kind == ValidationIssue::Kind::RelationOverlap) saw_overlap = true;
    CHECK(saw_overlap);

    TBAF unknown = apt;
    unknown.baf.attacks.push_back({"X", "A"});
    unknown.baf.canonicalize();
    r = validate(unknown);
    CHECK_FALSE(r.ok());
    bool saw_unknown = false;
    for (const auto& issue : r.issues)
        if (issue.kind == ValidationIssue::Kind::UnknownArgument) saw_unknown = true;
    CHECK(saw_unknown);

    TBAF warned = apt;
    warned.availability["A"] = IntervalSet();
    warned.baf.supports.push_back({"B", "B"});
    warned.baf.canonicalize();
    r = validate(warned);
    CHECK(r.ok());  // warnings only
    CHECK(r.issues.size() == 2);
}

TEST_CASE("relation time") {
    TBAF abs = abstract_example();
    CHECK(relation_time(abs, RelationKind::Attack, "B", "A") == parse_interval_set("(90-100]"));
    TBAF apt = apartment_example();
    CHECK(relation_time(apt, RelationKind::Attack, "I", "G") == parse_interval_set("[50-80]"));
    CHECK_THROWS_AS(relation_time(abs, RelationKind::Support, "B", "A"), NoSuchRelationError);

    TBAF disjoint = abs;
    disjoint.availability["B"] = parse_interval_set("[200-300]");
    CHECK(relation_time(disjoint, RelationKind::Attack, "B", "A").empty());
}

TEST_CASE("snapshots") {
    TBAF abs = abstract_example();
    BAF at75 = snapshot_at(abs, Rational(75));
    CHECK(at75.arguments == std::vector<ArgumentId>{"A", "C", "F", "G", "H", "I", "J"});

    TBAF apt = apartment_example();
    BAF at100 = snapshot_at(apt, Rational(100));
    CHECK(at100.arguments.size() == 9);
    CHECK_FALSE(at100.has_argument("I"));

    BAF before = snapshot_at(abs, Rational(-10));
    CHECK(before.arguments.empty());
    CHECK(before.attacks.empty());

    // A snapshot is itself a valid framework: relations stay disjoint and
    // every endpoint stays declared.
    for (int t = -5; t <= 185; t += 7) {
        BAF snap = snapshot_at(abs, Rational(t));
        for (const auto& p : snap.attacks) {
            CHECK(snap.has_argument(p.first));
            CHECK(snap.has_argument(p.second));
            CHECK_FALSE(snap.has_relation(RelationKind::Support, p.first, p.second));
        }
        for (const auto& p : snap.supports) {
            CHECK(snap.has_argument(p.first));
            CHECK(snap.has_argument(p.second));
        }
        // Pair presence agrees with relation_time membership.
        for (const auto& p : abs.baf.attacks) {
            bool present = snap.has_relation(RelationKind::Attack, p.first, p.second);
            CHECK(present ==
                  relation_time(abs, RelationKind::Attack, p.first, p.second).contains(Rational(t)));
        }
    }
}

TEST_CASE("abstract example breakpoints") {
    TBAF abs = abstract_example();
    std::vector<IntervalSet> avail;
    for (const auto& a : abs.baf.arguments) avail.push_back(abs.av(a));
    std::vector<Rational> expected;
    for (int v : {0, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120, 150, 160, 180})
        expected.emplace_back(v);
    CHECK(breakpoints(avail) == expected);
}

TEST_CASE("json round trip") {
    for (const char* name : {"abstract.json", "apartment.json", "intro.json", "empty.json"}) {
        TBAF f = load_tbaf_json(slurp(name));
        TBAF again = load_tbaf_json(save_tbaf_json(f));
        CHECK(again.baf == f.baf);
        CHECK(again.availability == f.availability);
        CHECK(save_tbaf_json(again) == save_tbaf_json(f));
    }
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(load_tbaf_json("not json"), SchemaError);
    CHECK_THROWS_AS(load_tbaf_json("[]"), SchemaError);
    CHECK_THROWS_AS(load_tbaf_json(R"({"arguments": [], "extra": 1})"), SchemaError);
    CHECK_THROWS_AS(
        load_tbaf_json(R"({"arguments": [{"id": "A"}, {"id": "A"}]})"), SchemaError);
    CHECK_THROWS_AS(
        load_tbaf_json(R"({"arguments": [{"id": "A b", "availability": "[0-1]"}]})"),
        SchemaError);
    CHECK_THROWS_AS(
        load_tbaf_json(R"({"arguments": [{"id": "A", "availability": "[0-1]"}],
                           "attacks": [["A"]]})"),
        SchemaError);
    // Unknown relation endpoints are validation errors surfaced at load.
    CHECK_THROWS_AS(
        load_tbaf_json(R"({"arguments": [{"id": "A", "availability": "[0-1]"}],
                           "attacks": [["X","A"]]})"),
        SchemaError);
    // Malformed interval text propagates the interval parse error.
    CHECK_THROWS_AS(
        load_tbaf_json(R"({"arguments": [{"id": "A", "availability": "[5-3]"}]})"),
        ParseError);
}

TEST_CASE("uniform lift and projection") {
    TBAF abs = abstract_example();
    BAF baf = to_baf(abs);
    CHECK(baf.arguments.size() == 10);

    TBAF lifted = lift_uniform(baf, parse_interval_set("[0-10]"));
    CHECK(to_baf(lifted) == baf);
    for (int t : {0, 5, 10}) CHECK(snapshot_at(lifted, Rational(t)) == baf);

    TBAF apt = apartment_example();
    BAF apt_baf = to_baf(apt);
    CHECK(apt_baf.arguments.size() == 10);
    CHECK(apt_baf.attacks.size() == 6);
    CHECK(apt_baf.supports.size() == 3);

    CHECK(to_baf(load_tbaf_json(slurp("empty.json"))).arguments.empty());
}
