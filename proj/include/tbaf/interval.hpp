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
#pragma once

#include "tbaf/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbaf {

class EmptyIntervalError : public std::invalid_argument {
public:
    explicit EmptyIntervalError(const std::string& what)
        : std::invalid_argument(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// One endpoint of a time interval. Infinite bounds are always open.
struct Bound {
    enum class Kind { NegInf, Finite, PosInf };

    Kind kind = Kind::Finite;
    Rational value{};
    bool closed = false;

    static Bound neg_inf() { return Bound{Kind::NegInf, Rational{}, false}; }
    static Bound pos_inf() { return Bound{Kind::PosInf, Rational{}, false}; }
    static Bound closed_at(Rational v) { return Bound{Kind::Finite, std::move(v), true}; }
    static Bound open_at(Rational v) { return Bound{Kind::Finite, std::move(v), false}; }

    bool finite() const { return kind == Kind::Finite; }

    friend bool operator==(const Bound& a, const Bound& b) {
        if (a.kind != b.kind) return false;
        if (a.kind != Kind::Finite) return true;
        return a.closed == b.closed && a.value == b.value;
    }
};

/// A nonempty continuous period of time. Construction rejects empty
/// intervals: hi < lo, or hi = lo unless both bounds are closed.
class Interval {
public:
    Interval(Bound lo, Bound hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.kind == Bound::Kind::PosInf || hi_.kind == Bound::Kind::NegInf ||
            (lo_.kind == Bound::Kind::NegInf && hi_.kind == Bound::Kind::NegInf) ||
            (lo_.kind == Bound::Kind::PosInf && hi_.kind == Bound::Kind::PosInf))
            throw EmptyIntervalError("interval bounds are reversed or degenerate");
        if (lo_.finite() && hi_.finite()) {
            if (lo_.value > hi_.value)
                throw EmptyIntervalError("empty interval: endpoint precedes startpoint");
            if (lo_.value == hi_.value && !(lo_.closed && hi_.closed))
                throw EmptyIntervalError("empty interval: open degenerate point");
        }
    }

    static Interval closed(Rational a, Rational b) {
        return Interval(Bound::closed_at(std::move(a)), Bound::closed_at(std::move(b)));
    }
    static Interval point(Rational a) {
        Rational b = a;
        return closed(std::move(a), std::move(b));
    }
    static Interval full_line() { return Interval(Bound::neg_inf(), Bound::pos_inf()); }

    const Bound& lo() const { return lo_; }
    const Bound& hi() const { return hi_; }

    bool contains(const Rational& t) const {
        if (lo_.finite()) {
            if (t < lo_.value || (t == lo_.value && !lo_.closed)) return false;
        }
        if (hi_.finite()) {
            if (t > hi_.value || (t == hi_.value && !hi_.closed)) return false;
        }
        return true;
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Bound lo_;
    Bound hi_;
};

/// An elementary piece of the line induced by a finite endpoint grid:
/// either a single grid point or a maximal gap between grid neighbours.
struct Piece {
    Interval span;
    Rational representative;
};

/// Decomposes the line over the given sorted, deduplicated endpoint
/// values. With k values this yields 2k+1 pieces (points alternate with
/// open gaps); with none, the whole line as a single piece.
inline std::vector<Piece> elementary_pieces(const std::vector<Rational>& grid) {
    std::vector<Piece> pieces;
    if (grid.empty()) {
        pieces.push_back({Interval::full_line(), Rational(0)});
        return pieces;
    }
    pieces.reserve(2 * grid.size() + 1);
    pieces.push_back({Interval(Bound::neg_inf(), Bound::open_at(grid.front())),
                      grid.front() - 1});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        pieces.push_back({Interval::point(grid[i]), grid[i]});
        if (i + 1 < grid.size()) {
            pieces.push_back({Interval(Bound::open_at(grid[i]), Bound::open_at(grid[i + 1])),
                              (grid[i] + grid[i + 1]) / 2});
        }
    }
    pieces.push_back({Interval(Bound::open_at(grid.back()), Bound::pos_inf()),
                      grid.back() + 1});
    return pieces;
}

namespace detail {

/// A position on the cut-point line. Finite cuts sit just before, at, or
/// just after their value; open/closed bound combinations map onto these
/// three positions, which makes interval walking purely ordinal.
struct Cut {
    enum class Kind { Min, Finite, Max };
    Kind kind = Kind::Finite;
    Rational value{};
    int tag = 0;  // -1 just before, 0 at, +1 just after (finite only)

    static Cut min() { return Cut{Kind::Min, Rational{}, 0}; }
    static Cut max() { return Cut{Kind::Max, Rational{}, 0}; }
    static Cut at(const Rational& v, int tag) { return Cut{Kind::Finite, v, tag}; }
};

inline int compare(const Cut& a, const Cut& b) {
    auto rank = [](const Cut& c) { return c.kind == Cut::Kind::Min ? -1
                                        : c.kind == Cut::Kind::Max ? 1 : 0; };
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
    if (a.kind != Cut::Kind::Finite) return 0;
    if (a.value != b.value) return a.value < b.value ? -1 : 1;
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    return 0;
}

inline bool operator<(const Cut& a, const Cut& b) { return compare(a, b) < 0; }
inline bool operator<=(const Cut& a, const Cut& b) { return compare(a, b) <= 0; }

inline Cut lower_cut(const Bound& b) {
    if (b.kind == Bound::Kind::NegInf) return Cut::min();
    return Cut::at(b.value, b.closed ? 0 : 1);
}
inline Cut upper_cut(const Bound& b) {
    if (b.kind == Bound::Kind::PosInf) return Cut::max();
    return Cut::at(b.value, b.closed ? 0 : -1);
}

/// Inverse mappings; only the representable tags can arise (lower cuts
/// are at/after, upper cuts are before/at).
inline Bound bound_from_lower(const Cut& c) {
    if (c.kind == Cut::Kind::Min) return Bound::neg_inf();
    return c.tag == 0 ? Bound::closed_at(c.value) : Bound::open_at(c.value);
}
inline Bound bound_from_upper(const Cut& c) {
    if (c.kind == Cut::Kind::Max) return Bound::pos_inf();
    return c.tag == 0 ? Bound::closed_at(c.value) : Bound::open_at(c.value);
}

/// Next cut after an interval end (end tags are -1 or 0, so the successor
/// stays on the same value).
inline Cut after_end(const Cut& c) {
    if (c.kind != Cut::Kind::Finite) return c;
    return Cut::at(c.value, c.tag + 1);
}
/// Previous cut before an interval start (start tags are 0 or +1).
inline Cut before_start(const Cut& c) {
    if (c.kind != Cut::Kind::Finite) return c;
    return Cut::at(c.value, c.tag - 1);
}

using CutSpan = std::pair<Cut, Cut>;

}  // namespace detail

/// Canonical finite union of disjoint, non-adjacent, sorted intervals.
/// Equality of denoted point sets coincides with structural equality.
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(std::initializer_list<Interval> parts)
        : IntervalSet(std::vector<Interval>(parts)) {}
    explicit IntervalSet(std::vector<Interval> parts) {
        if (parts.size() == 1) {
            intervals_ = std::move(parts);
            return;
        }
        std::vector<detail::CutSpan> spans;
        spans.reserve(parts.size());
        for (const Interval& iv : parts)
            spans.emplace_back(detail::lower_cut(iv.lo()), detail::upper_cut(iv.hi()));
        std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
            return detail::compare(a.first, b.first) < 0;
        });
        for (const auto& [start, end] : spans) {
            if (!intervals_.empty()) {
                detail::Cut reach = detail::after_end(detail::upper_cut(intervals_.back().hi()));
                if (detail::compare(start, reach) <= 0) {
                    if (detail::compare(detail::upper_cut(intervals_.back().hi()), end) < 0)
                        intervals_.back() = Interval(intervals_.back().lo(),
                                                     detail::bound_from_upper(end));
                    continue;
                }
            }
            intervals_.emplace_back(detail::bound_from_lower(start),
                                    detail::bound_from_upper(end));
        }
    }

    static IntervalSet empty_set() { return IntervalSet(); }
    static IntervalSet full_line() { return IntervalSet{Interval::full_line()}; }

    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }
    const std::vector<Interval>& intervals() const { return intervals_; }
    auto begin() const { return intervals_.begin(); }
    auto end() const { return intervals_.end(); }

    bool contains(const Rational& t) const {
        return std::any_of(intervals_.begin(), intervals_.end(),
                           [&t](const Interval& iv) { return iv.contains(t); });
    }

    /// Finite bound values of this set, in ascending order.
    std::vector<Rational> endpoint_values() const {
        std::vector<Rational> out;
        for (const Interval& iv : intervals_) {
            if (iv.lo().finite()) out.push_back(iv.lo().value);
            if (iv.hi().finite()) out.push_back(iv.hi().value);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        return a.intervals_ == b.intervals_;
    }

private:
    friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
    friend IntervalSet unite(const IntervalSet&, const IntervalSet&);
    friend IntervalSet complement_of(const IntervalSet&);

    static IntervalSet from_disjoint_spans(const std::vector<detail::CutSpan>& spans) {
        IntervalSet out;
        out.intervals_.reserve(spans.size());
        for (const auto& [start, end] : spans)
            out.intervals_.emplace_back(detail::bound_from_lower(start),
                                        detail::bound_from_upper(end));
        return out;
    }

    std::vector<Interval> intervals_;
};

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    if (a.empty() || b.empty()) return IntervalSet();
    std::vector<detail::CutSpan> out;
    std::size_t i = 0, j = 0;
    const auto& xs = a.intervals();
    const auto& ys = b.intervals();
    while (i < xs.size() && j < ys.size()) {
        detail::Cut lo_i = detail::lower_cut(xs[i].lo());
        detail::Cut lo_j = detail::lower_cut(ys[j].lo());
        detail::Cut hi_i = detail::upper_cut(xs[i].hi());
        detail::Cut hi_j = detail::upper_cut(ys[j].hi());
        const detail::Cut& lo = detail::compare(lo_i, lo_j) >= 0 ? lo_i : lo_j;
        const detail::Cut& hi = detail::compare(hi_i, hi_j) <= 0 ? hi_i : hi_j;
        if (detail::compare(lo, hi) <= 0) out.emplace_back(lo, hi);
        if (detail::compare(hi_i, hi_j) <= 0) ++i; else ++j;
    }
    return IntervalSet::from_disjoint_spans(out);
}

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Interval> parts;
    parts.reserve(a.size() + b.size());
    parts.insert(parts.end(), a.begin(), a.end());
    parts.insert(parts.end(), b.begin(), b.end());
    return IntervalSet(std::move(parts));
}

inline IntervalSet complement_of(const IntervalSet& s) {
    if (s.empty()) return IntervalSet::full_line();
    std::vector<detail::CutSpan> out;
    detail::Cut prev = detail::Cut::min();
    for (const Interval& iv : s) {
        detail::Cut start = detail::lower_cut(iv.lo());
        if (start.kind != detail::Cut::Kind::Min)
            out.emplace_back(prev, detail::before_start(start));
        detail::Cut end = detail::upper_cut(iv.hi());
        if (end.kind == detail::Cut::Kind::Max) return IntervalSet::from_disjoint_spans(out);
        prev = detail::after_end(end);
    }
    out.emplace_back(prev, detail::Cut::max());
    return IntervalSet::from_disjoint_spans(out);
}

inline IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
    if (a.empty() || b.empty()) return a;
    return intersect(a, complement_of(b));
}

inline bool is_subset(const IntervalSet& a, const IntervalSet& b) {
    // Every interval of a must fit inside one interval of b.
    std::size_t j = 0;
    const auto& ys = b.intervals();
    for (const Interval& iv : a) {
        detail::Cut lo = detail::lower_cut(iv.lo());
        detail::Cut hi = detail::upper_cut(iv.hi());
        while (j < ys.size() && detail::compare(detail::upper_cut(ys[j].hi()), lo) < 0) ++j;
        if (j == ys.size()) return false;
        if (detail::compare(detail::lower_cut(ys[j].lo()), lo) > 0) return false;
        if (detail::compare(hi, detail::upper_cut(ys[j].hi())) > 0) return false;
    }
    return true;
}

inline bool intersects(const IntervalSet& a, const IntervalSet& b) {
    std::size_t i = 0, j = 0;
    const auto& xs = a.intervals();
    const auto& ys = b.intervals();
    while (i < xs.size() && j < ys.size()) {
        detail::Cut lo_i = detail::lower_cut(xs[i].lo());
        detail::Cut lo_j = detail::lower_cut(ys[j].lo());
        detail::Cut hi_i = detail::upper_cut(xs[i].hi());
        detail::Cut hi_j = detail::upper_cut(ys[j].hi());
        const detail::Cut& lo = detail::compare(lo_i, lo_j) >= 0 ? lo_i : lo_j;
        const detail::Cut& hi = detail::compare(hi_i, hi_j) <= 0 ? hi_i : hi_j;
        if (detail::compare(lo, hi) <= 0) return true;
        if (detail::compare(hi_i, hi_j) <= 0) ++i; else ++j;
    }
    return false;
}

/// Sorted, deduplicated finite bound values across all inputs. Consecutive
/// values delimit elementary regions on which membership in every input
/// set is constant; each breakpoint itself is an elementary region too.
inline std::vector<Rational> breakpoints(const std::vector<IntervalSet>& sets) {
    std::vector<Rational> grid;
    for (const IntervalSet& s : sets) {
        std::vector<Rational> vals = s.endpoint_values();
        grid.insert(grid.end(), vals.begin(), vals.end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// ---------------------------------------------------------------------------
// Text form.  Grammar:
//   SET      := "{}" | "{" INTERVAL ("," INTERVAL)* "}"
//   INTERVAL := ("["|"(") BOUND "-" BOUND ("]"|")")
//   BOUND    := DECIMAL | "-inf" | "+inf"
// Whitespace is ignored around tokens; a bare INTERVAL denotes a singleton.
// ---------------------------------------------------------------------------

namespace detail {

class IntervalSetParser {
public:
    explicit IntervalSetParser(std::string_view text) : text_(text) {}

    IntervalSet parse() {
        skip_ws();
        std::vector<Interval> parts;
        if (peek() == '{') {
            ++pos_;
            skip_ws();
            if (peek() == '}') {
                ++pos_;
            } else {
                parts.push_back(parse_interval());
                skip_ws();
                while (peek() == ',') {
                    ++pos_;
                    parts.push_back(parse_interval());
                    skip_ws();
                }
                if (peek() != '}') fail("expected ',' or '}'");
                ++pos_;
            }
        } else {
            parts.push_back(parse_interval());
        }
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after interval set");
        return IntervalSet(std::move(parts));
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, pos_);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
    }

    Interval parse_interval() {
        skip_ws();
        char open = peek();
        if (open != '[' && open != '(') fail("expected '[' or '('");
        std::size_t start = pos_;
        ++pos_;
        Bound lo = parse_bound(/*lower=*/true, open == '[');
        skip_ws();
        if (peek() != '-') fail("expected '-' between bounds");
        ++pos_;
        Bound hi_value = parse_bound(/*lower=*/false, false);
        skip_ws();
        char close = peek();
        if (close != ']' && close != ')') fail("expected ']' or ')'");
        ++pos_;
        hi_value.closed = (close == ']') && hi_value.finite();
        try {
            return Interval(lo, hi_value);
        } catch (const EmptyIntervalError& e) {
            throw ParseError(e.what(), start);
        }
    }

    Bound parse_bound(bool /*lower*/, bool closed) {
        skip_ws();
        if (text_.substr(pos_).rfind("-inf", 0) == 0) {
            pos_ += 4;
            return Bound::neg_inf();
        }
        if (text_.substr(pos_).rfind("+inf", 0) == 0) {
            pos_ += 4;
            return Bound::pos_inf();
        }
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        bool any = false;
        while (pos_ < text_.size() &&
               ((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '.' ||
                text_[pos_] == '/'))
            ++pos_, any = true;
        if (!any) fail("expected a decimal bound, '-inf' or '+inf'");
        auto value = parse_rational(text_.substr(start, pos_ - start));
        if (!value) throw ParseError("malformed decimal bound", start);
        Bound b = Bound::closed_at(*value);
        b.closed = closed;
        return b;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline IntervalSet parse_interval_set(std::string_view text) {
    return detail::IntervalSetParser(text).parse();
}

inline std::string format_bound_value(const Bound& b) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return "-inf";
        case Bound::Kind::PosInf: return "+inf";
        case Bound::Kind::Finite: return format_rational(b.value);
    }
    return "?";
}

inline std::string format_interval(const Interval& iv) {
    std::string out;
    out += iv.lo().closed ? '[' : '(';
    out += format_bound_value(iv.lo());
    out += '-';
    out += format_bound_value(iv.hi());
    out += iv.hi().closed ? ']' : ')';
    return out;
}

inline std::string format_interval_set(const IntervalSet& s) {
    std::string out = "{";
    bool first = true;
    for (const Interval& iv : s) {
        if (!first) out += ", ";
        out += format_interval(iv);
        first = false;
    }
    out += "}";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
    return os << format_interval_set(s);
}

}  // namespace tbaf
