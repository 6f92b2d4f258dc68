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

#include "tbaf/timed_semantics.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tbaf {

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int max_arguments = 5;
    int max_intervals_per_argument = 2;
    double attack_density = 0.3;
    double support_density = 0.3;
    int endpoint_universe = 10;        // endpoints drawn from 0..endpoint_universe
    int endpoint_values_per_framework = 3;  // distinct endpoint values used
};

/// Deterministic random framework. Attack and support draws never assign
/// both relations to one ordered pair.
inline TBAF random_tbaf(const GeneratorConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.max_arguments));
    TBAF f;
    for (int i = 0; i < n; ++i) f.baf.arguments.push_back(std::string(1, char('A' + i)));

    // A small per-framework endpoint grid keeps the elementary-region
    // count inside the oracle caps.
    std::vector<Rational> universe;
    for (int v = 0; v <= cfg.endpoint_universe; ++v) universe.emplace_back(v);
    std::shuffle(universe.begin(), universe.end(), rng);
    int distinct = std::min<int>(cfg.endpoint_values_per_framework,
                                 static_cast<int>(universe.size()));
    universe.resize(std::max(distinct, 1));
    std::sort(universe.begin(), universe.end());

    auto random_interval = [&]() -> Interval {
        std::size_t i = rng() % universe.size();
        std::size_t j = rng() % universe.size();
        if (i > j) std::swap(i, j);
        bool lo_closed = (rng() & 1) != 0;
        bool hi_closed = (rng() & 1) != 0;
        if (i == j) lo_closed = hi_closed = true;
        return Interval(Bound{Bound::Kind::Finite, universe[i], lo_closed},
                        Bound{Bound::Kind::Finite, universe[j], hi_closed});
    };

    for (const ArgumentId& a : f.baf.arguments) {
        std::vector<Interval> parts;
        int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                             cfg.max_intervals_per_argument));
        for (int k = 0; k < count; ++k) parts.push_back(random_interval());
        f.availability.emplace(a, IntervalSet(std::move(parts)));
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double roll = coin(rng);
            RelationPair p(f.baf.arguments[i], f.baf.arguments[j]);
            if (roll < cfg.attack_density)
                f.baf.attacks.push_back(p);
            else if (roll < cfg.attack_density + cfg.support_density)
                f.baf.supports.push_back(p);
        }
    }
    f.baf.canonicalize();
    return f;
}

struct Counterexample {
    std::string description;
    std::string collection_json;  // offending collection, when one exists
    std::string witness;          // extra witness data (e.g. a time point)
};

struct PropertyVerdict {
    std::string property;
    long cases = 0;
    std::optional<Counterexample> counterexample;

    bool passed() const { return !counterexample.has_value(); }
};

namespace detail {

constexpr int kOracleMaxArguments = 6;
constexpr std::size_t kOracleMaxBreakpoints = 8;
constexpr std::size_t kOracleMaxAssignmentBits = 22;

/// Quantized verifier: a collection whose profile times are unions of
/// elementary regions is a vector of region bitmasks, one per argument,
/// and every interval operation in the timed definitions becomes a
/// bitwise operation. This re-derives the definitions in a second
/// representation, independent of the interval-set code paths.
class QuantizedOracle {
public:
    explicit QuantizedOracle(const TBAF& f) : an_(f) {
        std::vector<IntervalSet> avail;
        for (int i = 0; i < an_.size(); ++i) avail.push_back(an_.avail(i));
        grid_ = breakpoints(avail);
        pieces_ = elementary_pieces(grid_);
        if (pieces_.size() > 32)
            throw CapExceededError("oracle cap: more than 32 elementary regions");
        avail_bits_.assign(an_.size(), 0);
        for (std::size_t r = 0; r < pieces_.size(); ++r)
            for (int i = 0; i < an_.size(); ++i)
                if (an_.avail(i).contains(pieces_[r].representative))
                    avail_bits_[i] |= std::uint32_t(1) << r;
    }

    const TbafAnalysis& analysis() const { return an_; }
    int args() const { return an_.size(); }
    std::size_t regions() const { return pieces_.size(); }
    const std::vector<Piece>& pieces() const { return pieces_; }
    std::uint32_t avail_bits(int arg) const { return avail_bits_[arg]; }

    using Membership = std::vector<std::uint32_t>;  // region bits per argument

    IntervalSet to_interval_set(std::uint32_t bits) const {
        std::vector<Interval> parts;
        for (std::size_t r = 0; r < pieces_.size(); ++r)
            if (bits >> r & 1) parts.push_back(pieces_[r].span);
        return IntervalSet(std::move(parts));
    }

    Collection to_collection(const Membership& m) const {
        Collection c;
        for (int i = 0; i < args(); ++i)
            if (m[i]) c.insert(TProfile{an_.name_of(i), to_interval_set(m[i])});
        return c;
    }

    Membership from_collection(const Collection& c) const {
        Membership m(args(), 0);
        for (const auto& [a, times] : c) {
            int i = an_.index_of(a);
            for (std::size_t r = 0; r < pieces_.size(); ++r)
                if (times.contains(pieces_[r].representative)) m[i] |= std::uint32_t(1) << r;
        }
        return m;
    }

    // -- direct timed definitions over region bits ---------------------------

    std::uint32_t chain_bits(const tbaf::detail::IndexedChain& ch, const Membership& m) const {
        std::uint32_t bits = ~std::uint32_t(0);
        for (int v : ch.nodes) bits &= m[v];
        return bits;
    }

    bool conflict_free(const Membership& m) const {
        for (const auto& ch : an_.classical().chains())
            if (chain_bits(ch, m)) return false;
        return true;
    }

    bool safe(const Membership& m) const {
        for (int x = 0; x < args(); ++x) {
            std::uint32_t victim = avail_bits_[x];
            std::uint32_t defeat = 0;
            for (int ci : an_.classical().chains_targeting(x)) {
                const auto& ch = an_.classical().chains()[ci];
                std::uint32_t bits = victim;
                for (std::size_t pos = 0; pos + 1 < ch.nodes.size(); ++pos)
                    bits &= m[ch.nodes[pos]];
                defeat |= bits;
            }
            if (!defeat) continue;
            if (defeat & m[x]) return false;
            for (int pi : an_.classical().support_paths_targeting(x)) {
                const auto& p = an_.classical().support_paths()[pi];
                std::uint32_t bits = victim;
                for (std::size_t pos = 0; pos + 1 < p.nodes.size(); ++pos)
                    bits &= m[p.nodes[pos]];
                if (defeat & bits) return false;
            }
        }
        return true;
    }

    bool closed(const Membership& m) const {
        for (const auto& [from, to] : an_.framework().baf.supports) {
            int ia = an_.index_of(from), ib = an_.index_of(to);
            if (m[ia] & avail_bits_[ib] & ~m[ib]) return false;
        }
        return true;
    }

    std::uint32_t acceptable_bits(int a, const Membership& m) const {
        std::vector<std::uint32_t> threat(args(), 0);
        for (int ci : an_.classical().chains_targeting(a)) {
            const auto& ch = an_.classical().chains()[ci];
            std::uint32_t bits = avail_bits_[ch.source()] & avail_bits_[a];
            for (std::size_t pos = 1; pos + 1 < ch.nodes.size(); ++pos)
                bits &= m[ch.nodes[pos]];
            threat[ch.source()] |= bits;
        }
        std::uint32_t acc = avail_bits_[a];
        for (int b = 0; b < args(); ++b) {
            if (!threat[b]) continue;
            std::uint32_t defense = 0;
            for (int ci : an_.classical().chains_targeting(b)) {
                const auto& ch = an_.classical().chains()[ci];
                std::uint32_t bits = m[ch.source()];
                for (std::size_t pos = 1; pos < ch.nodes.size(); ++pos)
                    bits &= avail_bits_[ch.nodes[pos]];
                defense |= bits;
            }
            acc &= (avail_bits_[a] & ~threat[b]) | (avail_bits_[a] & defense);
        }
        return acc;
    }

    bool defends_all(const Membership& m) const {
        for (int a = 0; a < args(); ++a)
            if (m[a] && (m[a] & ~acceptable_bits(a, m))) return false;
        return true;
    }

    bool admissible(const Membership& m, TimedFlavor flavor) const {
        switch (flavor) {
            case TimedFlavor::Td: return conflict_free(m) && defends_all(m);
            case TimedFlavor::Ts: return safe(m) && defends_all(m);
            case TimedFlavor::Tc: return conflict_free(m) && closed(m) && defends_all(m);
        }
        return false;
    }

    bool t_stable(const Membership& m) const {
        if (!conflict_free(m)) return false;
        for (int x = 0; x < args(); ++x) {
            std::uint32_t residual = avail_bits_[x] & ~m[x];
            if (!residual) continue;
            std::uint32_t coverage = 0;
            for (int ci : an_.classical().chains_targeting(x)) {
                const auto& ch = an_.classical().chains()[ci];
                std::uint32_t bits = m[ch.source()];
                for (std::size_t pos = 1; pos < ch.nodes.size(); ++pos)
                    bits &= avail_bits_[ch.nodes[pos]];
                coverage |= bits;
            }
            if (residual & ~coverage) return false;
        }
        return true;
    }

    bool satisfies(const Membership& m, SemanticsFlavor flavor) const {
        switch (flavor) {
            case SemanticsFlavor::TStable: return t_stable(m);
            case SemanticsFlavor::TdPreferred: return admissible(m, TimedFlavor::Td);
            case SemanticsFlavor::TsPreferred: return admissible(m, TimedFlavor::Ts);
            case SemanticsFlavor::TcPreferred: return admissible(m, TimedFlavor::Tc);
        }
        return false;
    }

    /// Exhaustive enumeration of quantized collections satisfying the
    /// flavor's direct definition, with inclusion-maximality applied for
    /// the preferred flavors. An assignment is one bit word, so inclusion
    /// between collections is a bitmask test; the maximality pass walks
    /// hits by descending popcount against the running antichain.
    std::vector<Membership> enumerate(SemanticsFlavor flavor) const {
        std::vector<int> owner;  // argument owning each assignment bit
        std::vector<std::uint32_t> bit_region;
        for (int i = 0; i < args(); ++i)
            for (std::size_t r = 0; r < pieces_.size(); ++r)
                if (avail_bits_[i] >> r & 1) {
                    owner.push_back(i);
                    bit_region.push_back(std::uint32_t(1) << r);
                }
        if (owner.size() > kOracleMaxAssignmentBits)
            throw CapExceededError("oracle cap: quantized search space of 2^" +
                                   std::to_string(owner.size()) + " assignments");
        std::vector<std::uint64_t> hits;
        std::uint64_t total = std::uint64_t(1) << owner.size();
        Membership m(args(), 0);
        for (std::uint64_t assign = 0; assign < total; ++assign) {
            std::fill(m.begin(), m.end(), 0);
            for (std::size_t k = 0; k < owner.size(); ++k)
                if (assign >> k & 1) m[owner[k]] |= bit_region[k];
            if (satisfies(m, flavor)) hits.push_back(assign);
        }
        if (flavor != SemanticsFlavor::TStable) {
            std::sort(hits.begin(), hits.end(), [](std::uint64_t a, std::uint64_t b) {
                int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa > pb : a < b;
            });
            std::vector<std::uint64_t> maximal;
            for (std::uint64_t w : hits) {
                bool dominated = false;
                for (std::uint64_t top : maximal)
                    if ((w & ~top) == 0) { dominated = true; break; }
                if (!dominated) maximal.push_back(w);
            }
            hits = std::move(maximal);
            std::sort(hits.begin(), hits.end());
        }
        std::vector<Membership> out;
        out.reserve(hits.size());
        for (std::uint64_t assign : hits) {
            std::fill(m.begin(), m.end(), 0);
            for (std::size_t k = 0; k < owner.size(); ++k)
                if (assign >> k & 1) m[owner[k]] |= bit_region[k];
            out.push_back(m);
        }
        return out;
    }

private:
    TbafAnalysis an_;
    std::vector<Rational> grid_;
    std::vector<Piece> pieces_;
    std::vector<std::uint32_t> avail_bits_;
};

}  // namespace detail

/// Exhaustively enumerates collections whose per-argument times are
/// unions of elementary regions within availability, filtered by the
/// direct timed definitions (evaluated over region bitmasks).
inline std::vector<Collection> brute_force_timed_extensions(const TBAF& f,
                                                            SemanticsFlavor flavor) {
    if (f.baf.arguments.size() > detail::kOracleMaxArguments)
        throw CapExceededError("oracle cap: more than " +
                               std::to_string(detail::kOracleMaxArguments) + " arguments");
    {
        std::vector<IntervalSet> avail;
        for (const ArgumentId& a : f.baf.arguments) avail.push_back(f.av(a));
        if (breakpoints(avail).size() > detail::kOracleMaxBreakpoints)
            throw CapExceededError("oracle cap: more than " +
                                   std::to_string(detail::kOracleMaxBreakpoints) +
                                   " breakpoints");
    }
    detail::QuantizedOracle oracle(f);
    std::vector<Collection> out;
    for (const auto& m : oracle.enumerate(flavor)) out.push_back(oracle.to_collection(m));
    std::sort(out.begin(), out.end(), [](const Collection& a, const Collection& b) {
        return detail::collection_key(a) < detail::collection_key(b);
    });
    return out;
}

/// Sample points covering every snapshot equivalence class: all
/// breakpoints plus a representative inside every elementary region.
inline std::vector<Rational> sample_points(const TBAF& f) {
    std::vector<IntervalSet> avail;
    for (const ArgumentId& a : f.baf.arguments) avail.push_back(f.av(a));
    std::vector<Rational> out;
    for (const Piece& piece : elementary_pieces(breakpoints(avail)))
        out.push_back(piece.representative);
    return out;
}

namespace detail {

inline std::string describe_collection(const Collection& c) {
    std::string out = "{";
    bool first = true;
    for (const auto& [a, times] : c) {
        if (!first) out += ", ";
        out += "<" + a + "," + format_interval_set(times) + ">";
        first = false;
    }
    return out + "}";
}

inline std::string describe_set(const ArgSet& s) {
    std::string out = "{";
    bool first = true;
    for (const ArgumentId& a : s) {
        if (!first) out += ",";
        out += a;
        first = false;
    }
    return out + "}";
}

}  // namespace detail

/// Checks that every enumerated extension of the flavor projects, at
/// every sampled time point, onto a classical extension of the snapshot.
inline PropertyVerdict check_snapshot_projection(const TBAF& f, SemanticsFlavor flavor,
                                      const EnumerationCaps& caps = {}) {
    PropertyVerdict verdict;
    verdict.property = std::string("snapshot-projection/") + to_string(flavor);
    ExtensionReport report = enumerate_extensions(f, flavor, caps);
    for (const Rational& alpha : sample_points(f)) {
        BAF snapshot = snapshot_at(f, alpha);
        std::vector<ArgSet> classical;
        switch (flavor) {
            case SemanticsFlavor::TStable: classical = stable_extensions(snapshot); break;
            case SemanticsFlavor::TdPreferred:
                classical = preferred_extensions(snapshot, AdmissibilityFlavor::D); break;
            case SemanticsFlavor::TsPreferred:
                classical = preferred_extensions(snapshot, AdmissibilityFlavor::S); break;
            case SemanticsFlavor::TcPreferred:
                classical = preferred_extensions(snapshot, AdmissibilityFlavor::C); break;
        }
        for (const Collection& c : report.extensions) {
            ArgSet projection;
            for (const auto& [a, times] : c)
                if (times.contains(alpha)) projection.insert(a);
            ++verdict.cases;
            if (!std::binary_search(classical.begin(), classical.end(), projection)) {
                verdict.counterexample = Counterexample{
                    "extension " + detail::describe_collection(c) + " projects at t=" +
                        format_rational(alpha) + " to " + detail::describe_set(projection) +
                        " which is not a classical " + to_string(flavor) +
                        " snapshot extension",
                    save_collection_json(c), format_rational(alpha)};
                return verdict;
            }
        }
    }
    return verdict;
}

/// Property suite over one framework: safe sub-collections stay
/// conflict-free, conflict-free closed collections are safe, the
/// admissibility class inclusions, closed ts-preferred extensions are
/// tc-preferred, and skeptical acceptance is disjoint along defeat spans.
inline std::vector<PropertyVerdict> check_properties(const TBAF& f,
                                                       std::uint64_t sample_seed = 0,
                                                       int samples = 200,
                                                       const EnumerationCaps& caps = {}) {
    detail::QuantizedOracle oracle(f);
    TbafAnalysis an(f);
    TimedChecks checks(an);

    // Sampled quantized collections (exhaustive spaces are covered by the
    // brute-force oracle; the properties quantify over arbitrary
    // collections, so a seeded sample is drawn here).
    std::mt19937_64 rng(sample_seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<detail::QuantizedOracle::Membership> sampled;
    for (int k = 0; k < samples; ++k) {
        detail::QuantizedOracle::Membership m(oracle.args(), 0);
        for (int i = 0; i < oracle.args(); ++i)
            m[i] = static_cast<std::uint32_t>(rng()) & oracle.avail_bits(i);
        sampled.push_back(std::move(m));
    }

    std::vector<PropertyVerdict> verdicts;

    {
        PropertyVerdict v;
        v.property = "safe-subcollections-are-conflict-free";
        for (const auto& m : sampled) {
            Collection c = oracle.to_collection(m);
            if (!checks.safe(c)) continue;
            for (int k = 0; k < 8; ++k) {
                auto sub = m;
                for (auto& bits : sub) bits &= static_cast<std::uint32_t>(rng());
                Collection s = oracle.to_collection(sub);
                ++v.cases;
                if (!checks.conflict_free(s)) {
                    v.counterexample = Counterexample{
                        "safe " + detail::describe_collection(c) +
                            " has conflicting sub-collection " + detail::describe_collection(s),
                        save_collection_json(s), save_collection_json(c)};
                    break;
                }
            }
            if (v.counterexample) break;
        }
        verdicts.push_back(std::move(v));
    }

    {
        PropertyVerdict v;
        v.property = "conflict-free-closed-implies-safe";
        for (const auto& m : sampled) {
            Collection c = oracle.to_collection(m);
            if (!checks.conflict_free(c) || !checks.closed(c)) continue;
            ++v.cases;
            if (!checks.safe(c)) {
                v.counterexample =
                    Counterexample{"conflict-free closed collection is unsafe: " +
                                       detail::describe_collection(c),
                                   save_collection_json(c), ""};
                break;
            }
        }
        verdicts.push_back(std::move(v));
    }

    {
        PropertyVerdict v;
        v.property = "ts-admissible-is-td-admissible";
        for (const auto& m : sampled) {
            Collection c = oracle.to_collection(m);
            if (!checks.admissible(c, TimedFlavor::Ts)) continue;
            ++v.cases;
            if (!checks.admissible(c, TimedFlavor::Td)) {
                v.counterexample = Counterexample{"ts-admissible but not td-admissible: " +
                                                      detail::describe_collection(c),
                                                  save_collection_json(c), ""};
                break;
            }
        }
        verdicts.push_back(std::move(v));
    }

    {
        PropertyVerdict v;
        v.property = "tc-admissible-is-ts-admissible";
        for (const auto& m : sampled) {
            Collection c = oracle.to_collection(m);
            if (!checks.admissible(c, TimedFlavor::Tc)) continue;
            ++v.cases;
            if (!checks.admissible(c, TimedFlavor::Ts)) {
                v.counterexample = Counterexample{"tc-admissible but not ts-admissible: " +
                                                      detail::describe_collection(c),
                                                  save_collection_json(c), ""};
                break;
            }
        }
        verdicts.push_back(std::move(v));
    }

    {
        PropertyVerdict v;
        v.property = "closed-ts-preferred-is-tc-preferred";
        ExtensionReport ts = enumerate_extensions(f, SemanticsFlavor::TsPreferred, caps);
        ExtensionReport tc = enumerate_extensions(f, SemanticsFlavor::TcPreferred, caps);
        for (const Collection& c : ts.extensions) {
            if (!checks.closed(c)) continue;
            ++v.cases;
            bool found = std::any_of(tc.extensions.begin(), tc.extensions.end(),
                                     [&](const Collection& other) { return other == c; });
            if (!found) {
                v.counterexample =
                    Counterexample{"closed ts-preferred extension not tc-preferred: " +
                                       detail::describe_collection(c),
                                   save_collection_json(c), ""};
                break;
            }
        }
        verdicts.push_back(std::move(v));
    }

    {
        PropertyVerdict v;
        v.property = "skeptical-disjoint-on-defeat-spans";
        std::vector<TimedDefeatRecord> records = timed_defeat_records(f);
        for (SemanticsFlavor flavor :
             {SemanticsFlavor::TStable, SemanticsFlavor::TdPreferred,
              SemanticsFlavor::TsPreferred, SemanticsFlavor::TcPreferred}) {
            ExtensionReport report = enumerate_extensions(f, flavor, caps);
            if (report.extensions.empty()) continue;
            for (const TimedDefeatRecord& rec : records) {
                ++v.cases;
                IntervalSet overlap =
                    intersect(intersect(skeptical_acceptance(report, rec.source),
                                        skeptical_acceptance(report, rec.target)),
                              rec.time);
                if (!overlap.empty()) {
                    v.counterexample = Counterexample{
                        std::string(to_string(flavor)) + ": skeptical times of " + rec.source +
                            " and " + rec.target + " overlap on defeat span " +
                            format_interval_set(overlap),
                        "", format_interval_set(overlap)};
                    break;
                }
            }
            if (v.counterexample) break;
        }
        verdicts.push_back(std::move(v));
    }

    return verdicts;
}

}  // namespace tbaf
