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

#include "tbaf/profiles.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tbaf {

class NotAnAttackerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TimedFlavor { Td, Ts, Tc };

enum class SemanticsFlavor { TStable, TdPreferred, TsPreferred, TcPreferred };

inline const char* to_string(SemanticsFlavor f) {
    switch (f) {
        case SemanticsFlavor::TStable: return "t-stable";
        case SemanticsFlavor::TdPreferred: return "td-preferred";
        case SemanticsFlavor::TsPreferred: return "ts-preferred";
        case SemanticsFlavor::TcPreferred: return "tc-preferred";
    }
    return "?";
}

inline std::optional<SemanticsFlavor> parse_semantics_flavor(const std::string& name) {
    if (name == "t-stable" || name == "stable") return SemanticsFlavor::TStable;
    if (name == "td-preferred" || name == "td") return SemanticsFlavor::TdPreferred;
    if (name == "ts-preferred" || name == "ts") return SemanticsFlavor::TsPreferred;
    if (name == "tc-preferred" || name == "tc") return SemanticsFlavor::TcPreferred;
    return std::nullopt;
}

struct EnumerationCaps {
    std::size_t max_arguments = kDefaultEnumerationCap;
    std::size_t max_breakpoints = 64;
    std::size_t max_candidates = 10000;
};

struct ExtensionReport {
    SemanticsFlavor flavor;
    std::vector<Collection> extensions;
    std::map<ArgumentId, IntervalSet> skeptical;
};

// ---------------------------------------------------------------------------
// Collection-level operations.
// ---------------------------------------------------------------------------

/// Profiles for arguments present in both collections whose time
/// intersection is nonempty.
inline Collection t_intersection(const Collection& c1, const Collection& c2) {
    Collection out;
    for (const auto& [a, t1] : c1) {
        const IntervalSet* t2 = c2.times(a);
        if (!t2) continue;
        IntervalSet meet = intersect(t1, *t2);
        if (!meet.empty()) out.insert(TProfile{a, std::move(meet)});
    }
    return out;
}

/// True iff every profile of c1 has a same-argument profile in c2 with
/// superset times.
inline bool t_inclusion(const Collection& c1, const Collection& c2) {
    for (const auto& [a, t1] : c1) {
        const IntervalSet* t2 = c2.times(a);
        if (!t2 || !is_subset(t1, *t2)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Timed verifiers. Chain conventions:
//  * conflict-freeness and safety walk chains whose members all carry
//    profiles in the collection (an absent member kills the chain);
//  * threats against an argument take the threat source at its basic
//    availability, chain intermediates at collection times;
//  * defenses and stability coverage take the chain source at collection
//    times and everything else at basic availability.
// ---------------------------------------------------------------------------

class TimedChecks {
public:
    explicit TimedChecks(const TbafAnalysis& analysis) : an_(&analysis) {}

    bool conflict_free(const Collection& c) const {
        std::uint64_t members = member_mask(c);
        for (const auto& ch : an_->classical().chains()) {
            if ((ch.member_mask & ~members) != 0) continue;
            if (!an_->chain_time_over(ch, c).empty()) return false;
        }
        return true;
    }

    /// Safety quantifies victims over the basic t-profiles of all
    /// framework arguments: an argument may not be defeated from the
    /// collection while also being supported from it, or while belonging
    /// to it, on an overlapping span.
    bool safe(const Collection& c) const {
        std::uint64_t members = member_mask(c);
        for (int x = 0; x < an_->size(); ++x) {
            const IntervalSet& victim_times = an_->avail(x);
            if (victim_times.empty()) continue;

            IntervalSet defeat_span;
            for (int ci : an_->classical().chains_targeting(x)) {
                const auto& ch = an_->classical().chains()[ci];
                std::uint64_t others = ch.member_mask & ~(std::uint64_t(1) << x);
                if ((others & ~members) != 0) continue;
                IntervalSet t = an_->chain_time(ch, [&](std::size_t pos, int arg) {
                    if (pos + 1 == ch.nodes.size()) return &victim_times;
                    return c.times(an_->name_of(arg));
                });
                defeat_span = unite(defeat_span, t);
            }
            if (defeat_span.empty()) continue;
            if (members >> x & 1) {
                if (intersects(defeat_span, *c.times(an_->name_of(x)))) return false;
            }

            for (int pi : an_->classical().support_paths_targeting(x)) {
                const auto& p = an_->classical().support_paths()[pi];
                std::uint64_t others = p.member_mask & ~(std::uint64_t(1) << x);
                if ((others & ~members) != 0) continue;
                IntervalSet span = victim_times;
                for (std::size_t pos = 0; pos + 1 < p.nodes.size() && !span.empty(); ++pos) {
                    const IntervalSet* t = c.times(an_->name_of(p.nodes[pos]));
                    span = t ? intersect(span, *t) : IntervalSet();
                }
                if (intersects(defeat_span, span)) return false;
            }
        }
        return true;
    }

    /// Closure under support: whenever a member supports an argument, the
    /// supportee's profile must cover the live span of the edge.
    bool closed(const Collection& c) const {
        for (const auto& [a, times] : c) {
            int ia = an_->index_of(a);
            for (const auto& [from, to] : an_->framework().baf.supports) {
                if (an_->index_of(from) != ia) continue;
                IntervalSet live = intersect(times, an_->avail(an_->index_of(to)));
                if (live.empty()) continue;
                const IntervalSet* supportee = c.times(to);
                if (!supportee || !is_subset(live, *supportee)) return false;
            }
        }
        return true;
    }

    /// Spans during which each basic-profile defeater threatens `a`,
    /// keyed by defeater. Chain intermediates must be collection members.
    std::map<int, IntervalSet> threat_spans(int a, const Collection& c) const {
        std::map<int, IntervalSet> spans;
        for (int ci : an_->classical().chains_targeting(a)) {
            const auto& ch = an_->classical().chains()[ci];
            IntervalSet t = an_->chain_time(ch, [&](std::size_t pos, int arg) -> const IntervalSet* {
                if (pos == 0) return &an_->avail(arg);
                if (pos + 1 == ch.nodes.size()) return &an_->avail(arg);
                return c.times(an_->name_of(arg));
            });
            if (t.empty()) continue;
            auto [it, _] = spans.try_emplace(ch.source());
            it->second = unite(it->second, t);
        }
        return spans;
    }

    /// Time during which collection members defeat `b` (defense chains run
    /// through basic availability).
    IntervalSet counter_span(int b, const Collection& c) const {
        IntervalSet out;
        for (int ci : an_->classical().chains_targeting(b)) {
            const auto& ch = an_->classical().chains()[ci];
            IntervalSet t = an_->chain_time(ch, [&](std::size_t pos, int arg) -> const IntervalSet* {
                if (pos == 0) return c.times(an_->name_of(arg));
                return &an_->avail(arg);
            });
            out = unite(out, t);
        }
        return out;
    }

    IntervalSet defense_profile(int a, int b, const Collection& c) const {
        return intersect(an_->avail(a), counter_span(b, c));
    }

    IntervalSet acceptable_profile(int a, const Collection& c) const {
        std::map<int, IntervalSet> threats = threat_spans(a, c);
        const IntervalSet& base = an_->avail(a);
        std::optional<IntervalSet> acc;
        for (const auto& [b, span] : threats) {
            IntervalSet term = unite(difference(base, span), defense_profile(a, b, c));
            acc = acc ? intersect(*acc, term) : term;
            if (acc->empty()) break;
        }
        return acc ? *acc : base;
    }

    bool defends_all(const Collection& c) const {
        for (const auto& [a, times] : c)
            if (!is_subset(times, acceptable_profile(an_->index_of(a), c))) return false;
        return true;
    }

    bool admissible(const Collection& c, TimedFlavor flavor) const {
        switch (flavor) {
            case TimedFlavor::Td:
                return conflict_free(c) && defends_all(c);
            case TimedFlavor::Ts:
                return safe(c) && defends_all(c);
            case TimedFlavor::Tc:
                return conflict_free(c) && closed(c) && defends_all(c);
        }
        return false;
    }

    /// Conflict-free, and every t-profile outside the collection is
    /// defeated from it: each argument's availability minus its profile
    /// times must be covered by defeat spans sourced in the collection.
    bool t_stable(const Collection& c) const {
        if (!conflict_free(c)) return false;
        for (int x = 0; x < an_->size(); ++x) {
            const IntervalSet* mine = c.times(an_->name_of(x));
            IntervalSet residual = mine ? difference(an_->avail(x), *mine) : an_->avail(x);
            if (residual.empty()) continue;
            IntervalSet coverage;
            for (int ci : an_->classical().chains_targeting(x)) {
                const auto& ch = an_->classical().chains()[ci];
                IntervalSet t = an_->chain_time(ch, [&](std::size_t pos, int arg) -> const IntervalSet* {
                    if (pos == 0) return c.times(an_->name_of(arg));
                    return &an_->avail(arg);
                });
                coverage = unite(coverage, t);
                if (is_subset(residual, coverage)) break;
            }
            if (!is_subset(residual, coverage)) return false;
        }
        return true;
    }

private:
    std::uint64_t member_mask(const Collection& c) const {
        std::uint64_t m = 0;
        for (const auto& [a, _] : c) m |= std::uint64_t(1) << an_->index_of(a);
        return m;
    }

    const TbafAnalysis* an_;
};

inline bool is_conflict_free_t(const TBAF& f, const Collection& c) {
    TbafAnalysis an(f);
    return TimedChecks(an).conflict_free(c);
}

inline bool is_safe_t(const TBAF& f, const Collection& c) {
    TbafAnalysis an(f);
    return TimedChecks(an).safe(c);
}

inline bool is_closed_t(const TBAF& f, const Collection& c) {
    TbafAnalysis an(f);
    return TimedChecks(an).closed(c);
}

inline IntervalSet defense_profile(const TBAF& f, const ArgumentId& a, const ArgumentId& b,
                                   const Collection& c) {
    TbafAnalysis an(f);
    Collection basics = basic_collection(f);
    if (an.defeat_time(basics, b, a, ChainKind::SupportedDefeat).empty() &&
        an.defeat_time(basics, b, a, ChainKind::SecondaryDefeat).empty())
        throw NotAnAttackerError(b + " does not defeat " + a +
                                 " with nonempty time over basic profiles");
    return TimedChecks(an).defense_profile(an.index_of(a), an.index_of(b), c);
}

inline IntervalSet acceptable_profile(const TBAF& f, const ArgumentId& a, const Collection& c) {
    TbafAnalysis an(f);
    return TimedChecks(an).acceptable_profile(an.index_of(a), c);
}

inline bool admissibility_t(const TBAF& f, const Collection& c, TimedFlavor flavor) {
    TbafAnalysis an(f);
    return TimedChecks(an).admissible(c, flavor);
}

inline bool is_t_stable(const TBAF& f, const Collection& c) {
    TbafAnalysis an(f);
    return TimedChecks(an).t_stable(c);
}

// ---------------------------------------------------------------------------
// Extension enumeration. Availability endpoints split the line into
// elementary regions on which every availability predicate is constant;
// within a region the framework behaves like its snapshot, so candidate
// collections are stitched from region-wise classical solutions, verified
// against the direct timed definitions, and (for preferred flavors)
// filtered to set-t-inclusion-maximal survivors.
// ---------------------------------------------------------------------------

namespace detail {

/// Classical predicates of the snapshot at one region, evaluated on the
/// global chain index: a chain or support path exists in the snapshot iff
/// all its members are available there.
class RegionSolver {
public:
    RegionSolver(const TbafAnalysis& an, std::uint64_t avail_mask)
        : an_(&an), avail_(avail_mask) {}

    std::uint64_t avail_mask() const { return avail_; }

    bool conflict_free(std::uint64_t s) const {
        for (const auto& ch : an_->classical().chains())
            if ((ch.member_mask & ~s) == 0) return false;
        return true;
    }

    bool has_defeat_from(std::uint64_t s, int target) const {
        for (int ci : an_->classical().chains_targeting(target)) {
            const auto& ch = an_->classical().chains()[ci];
            if ((ch.member_mask & ~avail_) != 0) continue;
            if (s >> ch.source() & 1) return true;
        }
        return false;
    }

    bool defends(std::uint64_t s, int a) const {
        for (int ci : an_->classical().chains_targeting(a)) {
            const auto& ch = an_->classical().chains()[ci];
            if ((ch.member_mask & ~avail_) != 0) continue;
            if ((ch.inner_mask & ~s) != 0) continue;
            if (!has_defeat_from(s, ch.source())) return false;
        }
        return true;
    }

    bool defends_all(std::uint64_t s) const {
        for (int i = 0; i < an_->size(); ++i)
            if ((s >> i & 1) && !defends(s, i)) return false;
        return true;
    }

    bool safe(std::uint64_t s) const {
        for (int x = 0; x < an_->size(); ++x) {
            if (!(avail_ >> x & 1)) continue;
            bool defeated = false;
            for (int ci : an_->classical().chains_targeting(x)) {
                const auto& ch = an_->classical().chains()[ci];
                if ((ch.member_mask & ~avail_) != 0) continue;
                std::uint64_t others = ch.member_mask & ~(std::uint64_t(1) << x);
                if ((others & ~s) == 0) { defeated = true; break; }
            }
            if (!defeated) continue;
            if (s >> x & 1) return false;
            for (int pi : an_->classical().support_paths_targeting(x)) {
                const auto& p = an_->classical().support_paths()[pi];
                if ((p.member_mask & ~avail_) != 0) continue;
                std::uint64_t others = p.member_mask & ~(std::uint64_t(1) << x);
                if ((others & ~s) == 0) return false;
            }
        }
        return true;
    }

    bool closed(std::uint64_t s) const {
        for (const auto& [a, b] : an_->framework().baf.supports) {
            int ia = an_->index_of(a), ib = an_->index_of(b);
            if (!(avail_ >> ia & 1) || !(avail_ >> ib & 1)) continue;
            if ((s >> ia & 1) && !(s >> ib & 1)) return false;
        }
        return true;
    }

    bool stable(std::uint64_t s) const {
        if (!conflict_free(s)) return false;
        for (int x = 0; x < an_->size(); ++x)
            if ((avail_ >> x & 1) && !(s >> x & 1) && !has_defeat_from(s, x)) return false;
        return true;
    }

    bool admissible(std::uint64_t s, AdmissibilityFlavor flavor) const {
        switch (flavor) {
            case AdmissibilityFlavor::D: return conflict_free(s) && defends_all(s);
            case AdmissibilityFlavor::S: return safe(s) && defends_all(s);
            case AdmissibilityFlavor::C: return conflict_free(s) && closed(s) && defends_all(s);
        }
        return false;
    }

    /// All solutions for the flavor among subsets of `allowed`.
    /// Preferred flavors yield the inclusion-maximal admissible subsets.
    std::vector<std::uint64_t> solve(SemanticsFlavor flavor, std::uint64_t allowed) const {
        std::vector<std::uint64_t> hits;
        std::uint64_t sub = allowed;
        while (true) {
            bool keep = false;
            switch (flavor) {
                case SemanticsFlavor::TStable: keep = stable(sub); break;
                case SemanticsFlavor::TdPreferred:
                    keep = admissible(sub, AdmissibilityFlavor::D); break;
                case SemanticsFlavor::TsPreferred:
                    keep = admissible(sub, AdmissibilityFlavor::S); break;
                case SemanticsFlavor::TcPreferred:
                    keep = admissible(sub, AdmissibilityFlavor::C); break;
            }
            if (keep) hits.push_back(sub);
            if (sub == 0) break;
            sub = (sub - 1) & allowed;
        }
        if (flavor == SemanticsFlavor::TStable) {
            std::sort(hits.begin(), hits.end());
            return hits;
        }
        std::vector<std::uint64_t> maximal;
        for (std::uint64_t s : hits) {
            bool keep = true;
            for (std::uint64_t t : hits)
                if (t != s && (s & ~t) == 0) { keep = false; break; }
            if (keep) maximal.push_back(s);
        }
        std::sort(maximal.begin(), maximal.end());
        return maximal;
    }

private:
    const TbafAnalysis* an_;
    std::uint64_t avail_;
};

inline std::string collection_key(const Collection& c) {
    std::string key;
    for (const auto& [a, times] : c) {
        key += a;
        key += '=';
        key += format_interval_set(times);
        key += ';';
    }
    return key;
}

}  // namespace detail

inline ExtensionReport enumerate_extensions(const TBAF& f, SemanticsFlavor flavor,
                                            const EnumerationCaps& caps = {}) {
    TbafAnalysis an(f);
    int n = an.size();
    if (static_cast<std::size_t>(n) > caps.max_arguments)
        throw CapExceededError("argument count " + std::to_string(n) +
                               " exceeds cap " + std::to_string(caps.max_arguments));

    std::vector<IntervalSet> avail_sets;
    for (int i = 0; i < n; ++i) avail_sets.push_back(an.avail(i));
    std::vector<Rational> grid = breakpoints(avail_sets);
    if (grid.size() > caps.max_breakpoints)
        throw CapExceededError("breakpoint count " + std::to_string(grid.size()) +
                               " exceeds cap " + std::to_string(caps.max_breakpoints));
    std::vector<Piece> pieces = elementary_pieces(grid);

    std::vector<std::uint64_t> region_avail;
    std::vector<detail::RegionSolver> solvers;
    for (const Piece& piece : pieces) {
        std::uint64_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (an.avail(i).contains(piece.representative)) mask |= std::uint64_t(1) << i;
        region_avail.push_back(mask);
        solvers.emplace_back(an, mask);
    }

    auto assemble = [&](const std::vector<std::uint64_t>& choice) {
        std::vector<std::vector<Interval>> parts(n);
        for (std::size_t r = 0; r < pieces.size(); ++r)
            for (int i = 0; i < n; ++i)
                if (choice[r] >> i & 1) parts[i].push_back(pieces[r].span);
        Collection c;
        for (int i = 0; i < n; ++i) {
            if (parts[i].empty()) continue;
            c.insert(TProfile{an.name_of(i), IntervalSet(std::move(parts[i]))});
        }
        return c;
    };

    TimedChecks checks(an);
    std::vector<Collection> verified;

    std::vector<std::vector<std::uint64_t>> choices;
    std::size_t product = 1;
    bool any_empty = false;
    for (std::size_t r = 0; r < pieces.size(); ++r) {
        choices.push_back(solvers[r].solve(flavor, region_avail[r]));
        std::size_t sz = choices.back().size();
        if (sz == 0) { any_empty = true; break; }
        if (product > caps.max_candidates / sz)
            product = caps.max_candidates + 1;
        else
            product *= sz;
    }
    if (!any_empty) {
        if (product > caps.max_candidates)
            throw CapExceededError("candidate count exceeds cap " +
                                   std::to_string(caps.max_candidates) + " (candidates)");
        std::vector<std::size_t> odo(pieces.size(), 0);
        std::vector<std::uint64_t> choice(pieces.size());
        while (true) {
            for (std::size_t r = 0; r < pieces.size(); ++r) choice[r] = choices[r][odo[r]];
            Collection c = assemble(choice);
            bool ok = false;
            switch (flavor) {
                case SemanticsFlavor::TStable: ok = checks.t_stable(c); break;
                case SemanticsFlavor::TdPreferred:
                    ok = checks.admissible(c, TimedFlavor::Td); break;
                case SemanticsFlavor::TsPreferred:
                    ok = checks.admissible(c, TimedFlavor::Ts); break;
                case SemanticsFlavor::TcPreferred:
                    ok = checks.admissible(c, TimedFlavor::Tc); break;
            }
            if (ok) verified.push_back(std::move(c));
            std::size_t r = 0;
            while (r < pieces.size() && ++odo[r] == choices[r].size()) odo[r++] = 0;
            if (r == pieces.size()) break;
        }
    }

    // Preferred products of region-maximal solutions are antichains under
    // set-t-inclusion (coordinatewise domination between maximal sets
    // forces equality), so no pairwise maximality pass is needed.
    std::sort(verified.begin(), verified.end(), [](const Collection& a, const Collection& b) {
        return detail::collection_key(a) < detail::collection_key(b);
    });
    verified.erase(std::unique(verified.begin(), verified.end()), verified.end());

    ExtensionReport report;
    report.flavor = flavor;
    report.extensions = std::move(verified);
    for (int i = 0; i < n; ++i) {
        const ArgumentId& a = an.name_of(i);
        IntervalSet sk;
        bool first = true;
        for (const Collection& c : report.extensions) {
            const IntervalSet* t = c.times(a);
            if (!t) { sk = IntervalSet(); break; }
            sk = first ? *t : intersect(sk, *t);
            first = false;
        }
        if (report.extensions.empty()) sk = IntervalSet();
        report.skeptical.emplace(a, std::move(sk));
    }
    return report;
}

inline IntervalSet skeptical_acceptance(const ExtensionReport& report, const ArgumentId& a) {
    auto it = report.skeptical.find(a);
    return it == report.skeptical.end() ? IntervalSet() : it->second;
}

}  // namespace tbaf
