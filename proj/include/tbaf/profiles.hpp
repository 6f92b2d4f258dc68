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

#include "tbaf/baf_semantics.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tbaf {

class InvalidCollectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument paired with a set of time intervals: "this argument, in
/// those intervals".
struct TProfile {
    ArgumentId argument;
    IntervalSet times;
};

/// A finite set of t-profiles with pairwise distinct arguments and
/// nonempty time sets. Iteration order is sorted by argument id.
class Collection {
public:
    Collection() = default;

    static Collection of(const std::vector<TProfile>& profiles) {
        Collection c;
        for (const TProfile& p : profiles) c.insert(p);
        return c;
    }

    void insert(TProfile profile) {
        if (profile.times.empty())
            throw InvalidCollectionError("t-profile for " + profile.argument +
                                         " has an empty time set");
        auto [_, inserted] = profiles_.emplace(std::move(profile.argument),
                                               std::move(profile.times));
        if (!inserted)
            throw InvalidCollectionError("collection already holds a t-profile for " +
                                         _->first);
    }

    bool has(const ArgumentId& a) const { return profiles_.count(a) != 0; }
    std::size_t size() const { return profiles_.size(); }
    bool empty() const { return profiles_.empty(); }

    /// Times of the argument's profile, or nullptr when absent.
    const IntervalSet* times(const ArgumentId& a) const {
        auto it = profiles_.find(a);
        return it == profiles_.end() ? nullptr : &it->second;
    }

    ArgSet args() const {
        ArgSet out;
        for (const auto& [a, _] : profiles_) out.insert(a);
        return out;
    }

    auto begin() const { return profiles_.begin(); }
    auto end() const { return profiles_.end(); }

    friend bool operator==(const Collection&, const Collection&) = default;

private:
    std::map<ArgumentId, IntervalSet> profiles_;
};

inline TProfile basic_profile(const TBAF& f, const ArgumentId& a) {
    if (!f.baf.has_argument(a)) throw UnknownArgumentError("unknown argument " + a);
    return TProfile{a, f.av(a)};
}

/// The collection of all basic t-profiles (arguments with empty
/// availability cannot form a profile and are skipped).
inline Collection basic_collection(const TBAF& f) {
    Collection c;
    for (const ArgumentId& a : f.baf.arguments)
        if (!f.av(a).empty()) c.insert(TProfile{a, f.av(a)});
    return c;
}

/// Precomputed chain index of a timed framework plus indexed
/// availability. Chain time evaluation is shared by every timed check;
/// callers choose how each chain member's time set is resolved.
class TbafAnalysis {
public:
    explicit TbafAnalysis(const TBAF& f) : f_(&f), classical_(f.baf) {
        avail_.reserve(f.baf.arguments.size());
        for (const ArgumentId& a : f.baf.arguments) avail_.push_back(f.av(a));
    }

    const TBAF& framework() const { return *f_; }
    const detail::BafAnalysis& classical() const { return classical_; }
    int size() const { return classical_.size(); }
    int index_of(const ArgumentId& a) const { return classical_.index_of(a); }
    const ArgumentId& name_of(int i) const { return classical_.name_of(i); }
    const IntervalSet& avail(int i) const { return avail_[i]; }

    /// Joint time of a chain under a per-member resolution. `resolve`
    /// receives (position, argument index) and returns the member's time
    /// set, or nullptr to kill the chain.
    template <typename Resolve>
    IntervalSet chain_time(const detail::IndexedChain& ch, Resolve&& resolve) const {
        std::optional<IntervalSet> acc;
        for (std::size_t pos = 0; pos < ch.nodes.size(); ++pos) {
            const IntervalSet* t = resolve(pos, ch.nodes[pos]);
            if (t == nullptr || t->empty()) return IntervalSet();
            if (!acc)
                acc = *t;
            else
                acc = intersect(*acc, *t);
            if (acc->empty()) return IntervalSet();
        }
        return acc ? *acc : IntervalSet();
    }

    /// Chain time with every member resolved from one profile collection;
    /// members without a profile kill the chain.
    IntervalSet chain_time_over(const detail::IndexedChain& ch, const Collection& profiles) const {
        return chain_time(ch, [&](std::size_t, int arg) {
            return profiles.times(name_of(arg));
        });
    }

    /// Union over chains of the given kind from source to target of the
    /// member-time intersections over `profiles`.
    IntervalSet defeat_time(const Collection& profiles, const ArgumentId& source,
                            const ArgumentId& target, ChainKind kind) const {
        int t = index_of(target);
        int s = index_of(source);
        IntervalSet out;
        for (int ci : classical_.chains_targeting(t)) {
            const detail::IndexedChain& ch = classical_.chains()[ci];
            if (ch.kind != kind || ch.source() != s) continue;
            out = unite(out, chain_time_over(ch, profiles));
        }
        return out;
    }

private:
    const TBAF* f_;
    detail::BafAnalysis classical_;
    std::vector<IntervalSet> avail_;
};

inline IntervalSet supported_defeat_time(const TBAF& f, const Collection& profiles,
                                         const ArgumentId& source, const ArgumentId& target) {
    return TbafAnalysis(f).defeat_time(profiles, source, target, ChainKind::SupportedDefeat);
}

inline IntervalSet secondary_defeat_time(const TBAF& f, const Collection& profiles,
                                         const ArgumentId& source, const ArgumentId& target) {
    return TbafAnalysis(f).defeat_time(profiles, source, target, ChainKind::SecondaryDefeat);
}

/// All simple paths from source to target matching the kind's relation
/// pattern; availability is ignored here.
inline std::vector<std::vector<ArgumentId>> enumerate_chains(const TBAF& f,
                                                             const ArgumentId& source,
                                                             const ArgumentId& target,
                                                             ChainKind kind) {
    TbafAnalysis analysis(f);
    int s = analysis.index_of(source);
    int t = analysis.index_of(target);
    std::vector<std::vector<ArgumentId>> out;
    for (int ci : analysis.classical().chains_targeting(t)) {
        const detail::IndexedChain& ch = analysis.classical().chains()[ci];
        if (ch.kind != kind || ch.source() != s) continue;
        std::vector<ArgumentId> named;
        for (int v : ch.nodes) named.push_back(analysis.name_of(v));
        out.push_back(std::move(named));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A realized defeat chain with its joint availability over basic
/// profiles.
struct TimedDefeatRecord {
    ArgumentId source;
    ArgumentId target;
    ChainKind kind;
    std::vector<ArgumentId> chain;
    IntervalSet time;
};

/// Every chain with nonempty joint time over basic profiles.
inline std::vector<TimedDefeatRecord> timed_defeat_records(const TBAF& f) {
    TbafAnalysis analysis(f);
    Collection basics = basic_collection(f);
    std::vector<TimedDefeatRecord> out;
    for (const auto& ch : analysis.classical().chains()) {
        IntervalSet time = analysis.chain_time_over(ch, basics);
        if (time.empty()) continue;
        TimedDefeatRecord rec;
        rec.source = analysis.name_of(ch.source());
        rec.target = analysis.name_of(ch.target());
        rec.kind = ch.kind;
        for (int v : ch.nodes) rec.chain.push_back(analysis.name_of(v));
        rec.time = std::move(time);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const TimedDefeatRecord& a, const TimedDefeatRecord& b) {
        return std::tie(a.source, a.target, a.kind, a.chain) <
               std::tie(b.source, b.target, b.kind, b.chain);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Collection JSON: { "profiles": [ { "id": string, "times": string } ] }
// ---------------------------------------------------------------------------

inline Collection load_collection_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not a JSON document: ") + e.what(), "$");
    }
    if (!doc.is_object()) throw SchemaError("top level must be an object", "$");
    for (const auto& [key, _] : doc.items())
        if (key != "profiles") throw SchemaError("unknown key '" + key + "'", "$." + key);
    if (!doc.contains("profiles") || !doc["profiles"].is_array())
        throw SchemaError("'profiles' must be an array", "$.profiles");
    Collection c;
    std::size_t i = 0;
    for (const auto& entry : doc["profiles"]) {
        std::string path = "$.profiles[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
            !entry.contains("times") || !entry["times"].is_string() || entry.size() != 2)
            throw SchemaError("profile entry must be { id, times }", path);
        try {
            c.insert(TProfile{entry["id"].get<std::string>(),
                              parse_interval_set(entry["times"].get<std::string>())});
        } catch (const InvalidCollectionError& e) {
            throw SchemaError(e.what(), path);
        }
        ++i;
    }
    return c;
}

inline std::string save_collection_json(const Collection& c) {
    nlohmann::json doc;
    doc["profiles"] = nlohmann::json::array();
    for (const auto& [a, times] : c) {
        nlohmann::json entry;
        entry["id"] = a;
        entry["times"] = format_interval_set(times);
        doc["profiles"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

}  // namespace tbaf
