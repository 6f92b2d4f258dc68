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
#include "tbaf/interval.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tbaf;

namespace {

IntervalSet parse(const std::string& text) { return parse_interval_set(text); }

// Structural canonicity: sorted, disjoint, non-adjacent, nonempty parts.
bool canonical(const IntervalSet& s) {
    const auto& parts = s.intervals();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        detail::Cut end = detail::upper_cut(parts[i].hi());
        detail::Cut next = detail::lower_cut(parts[i + 1].lo());
        if (!(detail::after_end(end) < next)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("interval construction") {
    CHECK(format_interval(Interval::closed(Rational(0), Rational(150))) == "[0-150]");
    CHECK(format_interval(Interval::point(Rational(5))) == "[5-5]");
    CHECK(Interval::point(Rational(5)).contains(Rational(5)));
    CHECK_THROWS_AS(Interval(Bound::open_at(Rational(7)), Bound::open_at(Rational(7))),
                    EmptyIntervalError);
    CHECK_THROWS_AS(Interval(Bound::closed_at(Rational(5)), Bound::closed_at(Rational(3))),
                    EmptyIntervalError);
    CHECK_THROWS_AS(Interval(Bound::closed_at(Rational(0)), Bound::open_at(Rational(0))),
                    EmptyIntervalError);
}

TEST_CASE("intersection") {
    CHECK(intersect(parse("{[0-90)}"), parse("{(70-110]}")) == parse("{(70-90)}"));
    CHECK(intersect(parse("{[0-60]}"), parse("{(90-150]}")).empty());
    IntervalSet s = parse("{[1-2], (5-7)}");
    CHECK(intersect(s, IntervalSet::full_line()) == s);
    CHECK(intersect(IntervalSet::full_line(), s) == s);
}

TEST_CASE("union") {
    CHECK(unite(parse("[0-70]"), parse("(70-100]")) == parse("[0-100]"));
    CHECK(unite(parse("(1-3]"), parse("[4.5-8)")) == parse("{(1-3], [4.5-8)}"));
    // Open endpoints that do not meet stay separate.
    CHECK(unite(parse("(0-1)"), parse("(1-2)")) == parse("{(0-1), (1-2)}"));
    CHECK(unite(parse("{[0-50), (90-100)}"), parse("[40-95]")) == parse("[0-100)"));
}

TEST_CASE("difference") {
    CHECK(difference(parse("(70-110]"), parse("{(70-110], (70-80)}")).empty());
    CHECK(difference(parse("[0-100]"), parse("(70-80)")) == parse("{[0-70], [80-100]}"));
    IntervalSet s = parse("{[1-4), [9-9]}");
    CHECK(difference(s, IntervalSet()) == s);
}

TEST_CASE("complement") {
    CHECK(complement_of(IntervalSet()) == IntervalSet::full_line());
    CHECK(complement_of(IntervalSet::full_line()).empty());
    CHECK(complement_of(parse("[0-1]")) == parse("{(-inf-0), (1-+inf)}"));
    CHECK(complement_of(parse("{[0-1), [1-2]}")) == parse("{(-inf-0), (2-+inf)}"));
}

TEST_CASE("subset and membership") {
    CHECK(is_subset(parse("(70-90)"), parse("[0-90)")));
    CHECK_FALSE(is_subset(parse("[0-90)"), parse("(70-90)")));
    CHECK(is_subset(IntervalSet(), parse("[1-2]")));
    CHECK_FALSE(parse("(70-110]").contains(Rational(70)));
    CHECK(parse("(70-110]").contains(Rational(110)));
    CHECK(parse("[0-80]").contains(Rational(75)));
}

TEST_CASE("breakpoints") {
    std::vector<Rational> bp = breakpoints({parse("[0-80]"), parse("[50-150]")});
    CHECK(bp == std::vector<Rational>{Rational(0), Rational(50), Rational(80), Rational(150)});
    CHECK(breakpoints({IntervalSet()}).empty());
    // Every breakpoint earns its keep: the three regions around it are
    // not all equivalent, so dropping the value would merge regions on
    // which some input's membership changes.
    std::vector<IntervalSet> inputs = {parse("{[0-80]}"), parse("{[50-150]}")};
    std::vector<Piece> pieces = elementary_pieces(breakpoints(inputs));
    for (std::size_t i = 1; i + 1 < pieces.size(); i += 2) {  // point pieces
        bool earns = false;
        for (const IntervalSet& s : inputs) {
            bool before = s.contains(pieces[i - 1].representative);
            bool at = s.contains(pieces[i].representative);
            bool after = s.contains(pieces[i + 1].representative);
            if (before != at || at != after) earns = true;
        }
        CHECK(earns);
    }
}

TEST_CASE("parsing and formatting") {
    IntervalSet unbounded = parse("[0-+inf)");
    CHECK(unbounded.contains(Rational(1000000)));
    CHECK_FALSE(unbounded.contains(Rational(-1)));
    CHECK(format_interval_set(unbounded) == "{[0-+inf)}");

    CHECK(format_interval_set(parse("{(70-110]}")) == "{(70-110]}");
    CHECK(parse(" { ( 70 - 110 ] } ") == parse("{(70-110]}"));
    CHECK(parse("{}").empty());
    CHECK(parse("{[0-1],[1-2]}") == parse("[0-2]"));
    CHECK(parse("[-5--3]") == IntervalSet{Interval::closed(Rational(-5), Rational(-3))});
    CHECK(parse("(-inf-0]").contains(Rational(-123456)));
    CHECK(parse("[4.5-8)").contains(Rational(9, 2)));

    CHECK_THROWS_AS(parse("[5-3]"), ParseError);
    CHECK_THROWS_AS(parse("[1-2"), ParseError);
    CHECK_THROWS_AS(parse("{[1-2] [3-4]}"), ParseError);
    CHECK_THROWS_AS(parse("1-2"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("{(1-3], [9-4]}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);  // start of the offending interval
    }
}

TEST_CASE("rational text forms") {
    CHECK(format_rational(Rational(9, 2)) == "4.5");
    CHECK(format_rational(Rational(-3, 4)) == "-0.75");
    CHECK(format_rational(Rational(1, 3)) == "1/3");
    CHECK(format_rational(Rational(10)) == "10");
    CHECK(*parse_rational("4.50") == Rational(9, 2));
    CHECK(*parse_rational("-2/6") == Rational(-1, 3));
    CHECK_FALSE(parse_rational("10e").has_value());
    CHECK_FALSE(parse_rational(".5").has_value());
}

namespace {

struct SetGenerator {
    std::mt19937_64 rng;

    explicit SetGenerator(std::uint64_t seed) : rng(seed) {}

    Rational value() {
        // Integers and halves in a small window keep adjacency cases common.
        return Rational(static_cast<long>(rng() % 41) - 10, (rng() & 1) ? 2 : 1);
    }

    IntervalSet next() {
        std::vector<Interval> parts;
        std::size_t count = rng() % 4;
        for (std::size_t i = 0; i < count; ++i) {
            if (rng() % 16 == 0) {
                bool left = rng() & 1;
                Bound fin = (rng() & 1) ? Bound::closed_at(value()) : Bound::open_at(value());
                parts.push_back(left ? Interval(Bound::neg_inf(), fin)
                                     : Interval(fin, Bound::pos_inf()));
                continue;
            }
            Rational a = value(), b = value();
            if (a > b) std::swap(a, b);
            bool lo_closed = rng() & 1, hi_closed = rng() & 1;
            if (a == b) lo_closed = hi_closed = true;
            parts.push_back(Interval(Bound{Bound::Kind::Finite, a, lo_closed},
                                     Bound{Bound::Kind::Finite, b, hi_closed}));
        }
        return IntervalSet(std::move(parts));
    }
};

// Probe points covering every equivalence class of the two operands:
// each endpoint, small offsets around it, midpoints, and the far ends.
std::vector<Rational> probes(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Rational> vals = breakpoints({a, b});
    std::vector<Rational> out;
    if (vals.empty()) {
        out.emplace_back(0);
        return out;
    }
    out.push_back(vals.front() - 1);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out.push_back(vals[i] - Rational(1, 7));
        out.push_back(vals[i]);
        out.push_back(vals[i] + Rational(1, 7));
        if (i + 1 < vals.size()) out.push_back((vals[i] + vals[i + 1]) / 2);
    }
    out.push_back(vals.back() + 1);
    return out;
}

}  // namespace

TEST_CASE("algebra property suite") {
    SetGenerator gen(20260811);
    for (int round = 0; round < 1200; ++round) {
        IntervalSet a = gen.next();
        IntervalSet b = gen.next();
        IntervalSet c = gen.next();

        REQUIRE(canonical(a));
        REQUIRE(IntervalSet(a.intervals()) == a);  // canonicalization idempotent

        IntervalSet meet = intersect(a, b);
        IntervalSet join = unite(a, b);
        IntervalSet diff = difference(a, b);
        IntervalSet comp = complement_of(a);
        REQUIRE(canonical(meet));
        REQUIRE(canonical(join));
        REQUIRE(canonical(diff));
        REQUIRE(canonical(comp));

        // Pointwise oracle equivalence.
        for (const Rational& t : probes(a, b)) {
            bool in_a = a.contains(t), in_b = b.contains(t);
            REQUIRE(meet.contains(t) == (in_a && in_b));
            REQUIRE(join.contains(t) == (in_a || in_b));
            REQUIRE(diff.contains(t) == (in_a && !in_b));
            REQUIRE(comp.contains(t) == !in_a);
        }

        // Boolean-algebra laws as canonical-set identities.
        REQUIRE(meet == intersect(b, a));
        REQUIRE(join == unite(b, a));
        REQUIRE(intersect(a, intersect(b, c)) == intersect(intersect(a, b), c));
        REQUIRE(unite(a, unite(b, c)) == unite(unite(a, b), c));
        REQUIRE(intersect(a, unite(b, c)) == unite(intersect(a, b), intersect(a, c)));
        REQUIRE(complement_of(join) == intersect(comp, complement_of(b)));
        REQUIRE(diff == intersect(a, complement_of(b)));
        REQUIRE(complement_of(comp) == a);

        // Subset agrees with difference, and round-trip through text.
        REQUIRE(is_subset(a, b) == difference(a, b).empty());
        REQUIRE(parse_interval_set(format_interval_set(a)) == a);
    }
}
