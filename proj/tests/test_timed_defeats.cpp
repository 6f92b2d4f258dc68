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
#include "tbaf/oracle.hpp"
#include "tbaf/profiles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
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

Collection random_subprofiles(const TBAF& f, std::mt19937_64& rng) {
    std::vector<IntervalSet> avail;
    for (const auto& a : f.baf.arguments) avail.push_back(f.av(a));
    std::vector<Piece> pieces = elementary_pieces(breakpoints(avail));
    Collection c;
    for (const auto& a : f.baf.arguments) {
        std::vector<Interval> parts;
        for (const Piece& piece : pieces)
            if (f.av(a).contains(piece.representative) && (rng() & 1))
                parts.push_back(piece.span);
        IntervalSet times(std::move(parts));
        if (!times.empty()) c.insert(TProfile{a, std::move(times)});
    }
    return c;
}

}  // namespace

TEST_CASE("profiles and collections") {
    TBAF abs = abstract_example();
    TProfile j = basic_profile(abs, "J");
    CHECK(j.times == parse_interval_set("[0-90)"));
    CHECK_THROWS_AS(basic_profile(abs, "Z"), UnknownArgumentError);

    TBAF hollow = abs;
    hollow.availability["J"] = IntervalSet();
    CHECK(basic_profile(hollow, "J").times.empty());
    CHECK_FALSE(basic_collection(hollow).has("J"));
    CHECK_THROWS_AS(Collection::of({TProfile{"J", IntervalSet()}}), InvalidCollectionError);
    CHECK_THROWS_AS(Collection::of({TProfile{"J", parse_interval_set("[0-1]")},
                                    TProfile{"J", parse_interval_set("[2-3]")}}),
                    InvalidCollectionError);
}

TEST_CASE("chain enumeration ignores availability") {
    TBAF abs = abstract_example();
    CHECK(enumerate_chains(abs, "J", "I", ChainKind::SupportedDefeat) ==
          std::vector<std::vector<ArgumentId>>{{"J", "I"}});
    CHECK(enumerate_chains(abs, "J", "F", ChainKind::SecondaryDefeat) ==
          std::vector<std::vector<ArgumentId>>{{"J", "I", "F"}});
    CHECK(enumerate_chains(abs, "D", "B", ChainKind::SupportedDefeat) ==
          std::vector<std::vector<ArgumentId>>{{"D", "C", "B"}});
    CHECK(enumerate_chains(abs, "J", "A", ChainKind::SupportedDefeat).empty());
}

TEST_CASE("defeat times over basic profiles") {
    TBAF abs = abstract_example();
    Collection basics = basic_collection(abs);
    CHECK(supported_defeat_time(abs, basics, "J", "I") == parse_interval_set("(70-90)"));
    CHECK(secondary_defeat_time(abs, basics, "J", "F") == parse_interval_set("(70-90)"));
    CHECK(supported_defeat_time(abs, basics, "D", "B").empty());
    CHECK(supported_defeat_time(abs, basics, "E", "A") == parse_interval_set("[100-100]"));
    CHECK(secondary_defeat_time(abs, basics, "A", "G") == parse_interval_set("[60-80]"));
    CHECK(secondary_defeat_time(abs, basics, "D", "A").empty());  // no attack leaves D
}

TEST_CASE("chains without a profile are dead") {
    TBAF abs = abstract_example();
    Collection no_b = basic_collection(abs);
    Collection trimmed;
    for (const auto& [a, times] : no_b)
        if (a != "B") trimmed.insert(TProfile{a, times});
    CHECK(supported_defeat_time(abs, trimmed, "E", "A").empty());
    CHECK(supported_defeat_time(abs, trimmed, "J", "I") == parse_interval_set("(70-90)"));
}

TEST_CASE("defeat time properties") {
    GeneratorConfig cfg;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        cfg.seed = seed;
        TBAF f = random_tbaf(cfg);
        std::mt19937_64 rng(seed * 77);
        Collection profiles = random_subprofiles(f, rng);
        Collection shrunk;
        for (const auto& [a, times] : profiles) {
            if (rng() % 3 == 0) continue;
            IntervalSet cut = times;
            if (rng() & 1) {  // drop the first interval
                std::vector<Interval> parts(times.begin(), times.end());
                parts.erase(parts.begin());
                cut = IntervalSet(std::move(parts));
            }
            if (!cut.empty()) shrunk.insert(TProfile{a, cut});
        }

        for (const auto& a : f.baf.arguments) {
            for (const auto& b : f.baf.arguments) {
                for (ChainKind kind :
                     {ChainKind::SupportedDefeat, ChainKind::SecondaryDefeat}) {
                    IntervalSet big = kind == ChainKind::SupportedDefeat
                                          ? supported_defeat_time(f, profiles, a, b)
                                          : secondary_defeat_time(f, profiles, a, b);
                    IntervalSet small = kind == ChainKind::SupportedDefeat
                                            ? supported_defeat_time(f, shrunk, a, b)
                                            : secondary_defeat_time(f, shrunk, a, b);
                    // Shrinking profiles never grows a defeat time.
                    REQUIRE(is_subset(small, big));
                    // Defeat time stays inside both endpoint profiles.
                    if (const IntervalSet* ta = profiles.times(a))
                        REQUIRE(is_subset(big, *ta));
                    if (const IntervalSet* tb = profiles.times(b))
                        REQUIRE(is_subset(big, *tb));
                    if (!profiles.has(a) || !profiles.has(b)) REQUIRE(big.empty());
                }
            }
        }
    }
}

TEST_CASE("uniform availability matches the classical defeat relation") {
    for (std::uint64_t seed = 50; seed <= 80; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        BAF baf = random_tbaf(cfg).baf;
        TBAF lifted = lift_uniform(baf, parse_interval_set("[0-10]"));
        Collection basics = basic_collection(lifted);
        std::vector<DefeatRecord> records = defeat_pairs(baf);
        for (const auto& a : baf.arguments) {
            for (const auto& b : baf.arguments) {
                for (ChainKind kind :
                     {ChainKind::SupportedDefeat, ChainKind::SecondaryDefeat}) {
                    bool classical = false;
                    for (const auto& rec : records)
                        if (rec.source == a && rec.target == b && rec.kind == kind)
                            classical = true;
                    IntervalSet timed = kind == ChainKind::SupportedDefeat
                                            ? supported_defeat_time(lifted, basics, a, b)
                                            : secondary_defeat_time(lifted, basics, a, b);
                    REQUIRE(timed.empty() == !classical);
                }
            }
        }
    }
}

TEST_CASE("point restriction agrees with restricted snapshots") {
    for (std::uint64_t seed = 100; seed <= 130; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.max_arguments = 4;
        TBAF f = random_tbaf(cfg);
        std::mt19937_64 rng(seed);
        Collection profiles = random_subprofiles(f, rng);
        for (const Rational& t : sample_points(f)) {
            // Classical framework restricted to profile holders at t.
            BAF restricted;
            for (const auto& [a, times] : profiles)
                if (times.contains(t)) restricted.arguments.push_back(a);
            auto keep = [&restricted](const RelationPair& p) {
                return restricted.has_argument(p.first) && restricted.has_argument(p.second);
            };
            restricted.canonicalize();
            for (const auto& p : f.baf.attacks)
                if (keep(p)) restricted.attacks.push_back(p);
            for (const auto& p : f.baf.supports)
                if (keep(p)) restricted.supports.push_back(p);
            restricted.canonicalize();
            std::vector<DefeatRecord> records = defeat_pairs(restricted);

            for (const auto& a : f.baf.arguments) {
                for (const auto& b : f.baf.arguments) {
                    for (ChainKind kind :
                         {ChainKind::SupportedDefeat, ChainKind::SecondaryDefeat}) {
                        IntervalSet timed = kind == ChainKind::SupportedDefeat
                                                ? supported_defeat_time(f, profiles, a, b)
                                                : secondary_defeat_time(f, profiles, a, b);
                        bool classical = false;
                        for (const auto& rec : records)
                            if (rec.source == a && rec.target == b && rec.kind == kind)
                                classical = true;
                        REQUIRE(timed.contains(t) == classical);
                    }
                }
            }
        }
    }
}
