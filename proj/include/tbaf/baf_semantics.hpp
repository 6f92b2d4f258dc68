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

#include "tbaf/framework.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tbaf {

class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

enum class ChainKind { SupportedDefeat, SecondaryDefeat };

inline const char* to_string(ChainKind k) {
    return k == ChainKind::SupportedDefeat ? "supported" : "secondary";
}

enum class AdmissibilityFlavor { D, S, C };

using ArgSet = std::set<ArgumentId>;

struct DefeatRecord {
    ArgumentId source;
    ArgumentId target;
    ChainKind kind;
    std::vector<ArgumentId> chain;
};

namespace detail {

constexpr std::size_t kMaxIndexedArguments = 64;
constexpr std::size_t kMaxChains = 500000;

/// A defeat chain over argument indices. Supported: supports then one
/// final attack (a direct attack is the length-2 case). Secondary: one
/// initial attack followed by supports.
struct IndexedChain {
    ChainKind kind;
    std::vector<int> nodes;  // source first, target last
    std::uint64_t member_mask = 0;
    std::uint64_t inner_mask = 0;  // members minus source and target

    int source() const { return nodes.front(); }
    int target() const { return nodes.back(); }
};

struct IndexedSupportPath {
    std::vector<int> nodes;  // at least one support edge
    std::uint64_t member_mask = 0;
};

/// Precomputed chain index for one BAF. All coherence and extension
/// predicates reduce to mask tests against these chains.
class BafAnalysis {
public:
    explicit BafAnalysis(const BAF& baf) : baf_(&baf) {
        if (baf.arguments.size() > kMaxIndexedArguments)
            throw CapExceededError("framework exceeds " +
                                   std::to_string(kMaxIndexedArguments) + " arguments");
        int n = static_cast<int>(baf.arguments.size());
        for (int i = 0; i < n; ++i) index_[baf.arguments[i]] = i;
        supports_out_.resize(n);
        attacks_out_.resize(n);
        for (const auto& [a, b] : baf.supports)
            supports_out_[index_.at(a)].push_back(index_.at(b));
        for (const auto& [a, b] : baf.attacks)
            attacks_out_[index_.at(a)].push_back(index_.at(b));
        attackers_mask_.assign(n, 0);
        chains_by_target_.resize(n);
        support_paths_by_target_.resize(n);
        build_chains();
    }

    const BAF& baf() const { return *baf_; }
    int size() const { return static_cast<int>(baf_->arguments.size()); }

    int index_of(const ArgumentId& a) const {
        auto it = index_.find(a);
        if (it == index_.end()) throw UnknownArgumentError("unknown argument " + a);
        return it->second;
    }
    const ArgumentId& name_of(int i) const { return baf_->arguments[i]; }

    std::uint64_t mask_of(const ArgSet& s) const {
        std::uint64_t m = 0;
        for (const ArgumentId& a : s) m |= std::uint64_t(1) << index_of(a);
        return m;
    }
    ArgSet set_of(std::uint64_t mask) const {
        ArgSet s;
        for (int i = 0; i < size(); ++i)
            if (mask >> i & 1) s.insert(name_of(i));
        return s;
    }

    const std::vector<IndexedChain>& chains() const { return chains_; }
    const std::vector<int>& chains_targeting(int target) const {
        return chains_by_target_[target];
    }
    const std::vector<IndexedSupportPath>& support_paths() const { return support_paths_; }
    const std::vector<int>& support_paths_targeting(int target) const {
        return support_paths_by_target_[target];
    }

    /// Sources that defeat `target` through some chain (any intermediates).
    std::uint64_t attackers_mask(int target) const { return attackers_mask_[target]; }

    // -- predicates over argument masks ------------------------------------

    /// No defeat chain lies entirely inside the set.
    bool conflict_free(std::uint64_t s) const {
        for (const IndexedChain& ch : chains_)
            if ((ch.member_mask & ~s) == 0) return false;
        return true;
    }

    /// Every defeater of `a` whose chain intermediates lie inside the set
    /// is itself defeated from the set.
    bool defends(std::uint64_t s, int a) const {
        for (int ci : chains_by_target_[a]) {
            const IndexedChain& ch = chains_[ci];
            if ((ch.inner_mask & ~s) != 0) continue;  // chain broken outside s
            if ((attackers_mask_[ch.source()] & s) == 0) return false;
        }
        return true;
    }

    bool defends_all(std::uint64_t s) const {
        for (int i = 0; i < size(); ++i)
            if ((s >> i & 1) && !defends(s, i)) return false;
        return true;
    }

    /// No argument is defeated from the set while also being supported
    /// from the set or a member of it.
    bool safe(std::uint64_t s) const {
        for (int x = 0; x < size(); ++x) {
            bool defeated = false;
            for (int ci : chains_by_target_[x]) {
                const IndexedChain& ch = chains_[ci];
                std::uint64_t need = ch.member_mask & ~(std::uint64_t(1) << x);
                if ((need & ~s) == 0) { defeated = true; break; }
            }
            if (!defeated) continue;
            if (s >> x & 1) return false;
            for (int pi : support_paths_by_target_[x]) {
                const IndexedSupportPath& p = support_paths_[pi];
                std::uint64_t need = p.member_mask & ~(std::uint64_t(1) << x);
                if ((need & ~s) == 0) return false;
            }
        }
        return true;
    }

    bool closed(std::uint64_t s) const {
        for (const auto& [a, b] : baf_->supports) {
            int ia = index_.at(a), ib = index_.at(b);
            if ((s >> ia & 1) && !(s >> ib & 1)) return false;
        }
        return true;
    }

    bool admissible(std::uint64_t s, AdmissibilityFlavor flavor) const {
        switch (flavor) {
            case AdmissibilityFlavor::D:
                return conflict_free(s) && defends_all(s);
            case AdmissibilityFlavor::S:
                return safe(s) && defends_all(s);
            case AdmissibilityFlavor::C:
                return conflict_free(s) && closed(s) && defends_all(s);
        }
        return false;
    }

    bool stable(std::uint64_t s) const {
        if (!conflict_free(s)) return false;
        for (int x = 0; x < size(); ++x)
            if (!(s >> x & 1) && (attackers_mask_[x] & s) == 0) return false;
        return true;
    }

    // -- enumeration --------------------------------------------------------

    std::vector<std::uint64_t> all_subsets_where(bool (BafAnalysis::*pred)(std::uint64_t) const,
                                                 std::size_t cap) const {
        if (static_cast<std::size_t>(size()) > cap)
            throw CapExceededError("argument count " + std::to_string(size()) +
                                   " exceeds enumeration cap " + std::to_string(cap));
        std::vector<std::uint64_t> out;
        std::uint64_t total = std::uint64_t(1) << size();
        for (std::uint64_t s = 0; s < total; ++s)
            if ((this->*pred)(s)) out.push_back(s);
        return out;
    }

    std::vector<std::uint64_t> stable_sets(std::size_t cap) const {
        return all_subsets_where(&BafAnalysis::stable, cap);
    }

    std::vector<std::uint64_t> preferred_sets(AdmissibilityFlavor flavor, std::size_t cap) const {
        if (static_cast<std::size_t>(size()) > cap)
            throw CapExceededError("argument count " + std::to_string(size()) +
                                   " exceeds enumeration cap " + std::to_string(cap));
        std::vector<std::uint64_t> admissible_sets;
        std::uint64_t total = std::uint64_t(1) << size();
        for (std::uint64_t s = 0; s < total; ++s)
            if (admissible(s, flavor)) admissible_sets.push_back(s);
        std::vector<std::uint64_t> out;
        for (std::uint64_t s : admissible_sets) {
            bool maximal = true;
            for (std::uint64_t t : admissible_sets)
                if (t != s && (s & ~t) == 0) { maximal = false; break; }
            if (maximal) out.push_back(s);
        }
        return out;
    }

private:
    void add_chain(ChainKind kind, const std::vector<int>& nodes) {
        if (chains_.size() >= kMaxChains)
            throw CapExceededError("defeat chain count exceeds " + std::to_string(kMaxChains));
        IndexedChain ch;
        ch.kind = kind;
        ch.nodes = nodes;
        for (int v : nodes) ch.member_mask |= std::uint64_t(1) << v;
        ch.inner_mask = ch.member_mask & ~(std::uint64_t(1) << ch.source()) &
                        ~(std::uint64_t(1) << ch.target());
        attackers_mask_[ch.target()] |= std::uint64_t(1) << ch.source();
        chains_by_target_[ch.target()].push_back(static_cast<int>(chains_.size()));
        chains_.push_back(std::move(ch));
    }

    /// DFS over simple support paths from `path.back()`, emitting a
    /// supported-defeat chain for every attack leaving the path head.
    /// A direct self-attack is kept as the degenerate length-2 chain.
    void grow_supported(std::vector<int>& path, std::uint64_t on_path) {
        int head = path.back();
        for (int v : attacks_out_[head]) {
            if (on_path >> v & 1) {
                if (v == head && path.size() == 1) {
                    path.push_back(v);
                    add_chain(ChainKind::SupportedDefeat, path);
                    path.pop_back();
                }
                continue;
            }
            path.push_back(v);
            add_chain(ChainKind::SupportedDefeat, path);
            path.pop_back();
        }
        for (int v : supports_out_[head]) {
            if (on_path >> v & 1) continue;
            path.push_back(v);
            grow_supported(path, on_path | std::uint64_t(1) << v);
            path.pop_back();
        }
    }

    /// DFS over simple support paths after an initial attack; every
    /// extension by at least one support is a secondary defeat.
    void grow_secondary(std::vector<int>& path, std::uint64_t on_path) {
        int head = path.back();
        for (int v : supports_out_[head]) {
            if (on_path >> v & 1) continue;
            path.push_back(v);
            add_chain(ChainKind::SecondaryDefeat, path);
            grow_secondary(path, on_path | std::uint64_t(1) << v);
            path.pop_back();
        }
    }

    void grow_support_paths(std::vector<int>& path, std::uint64_t on_path) {
        int head = path.back();
        for (int v : supports_out_[head]) {
            if (on_path >> v & 1) continue;
            path.push_back(v);
            if (support_paths_.size() >= kMaxChains)
                throw CapExceededError("support path count exceeds " +
                                       std::to_string(kMaxChains));
            IndexedSupportPath p;
            p.nodes = path;
            for (int u : path) p.member_mask |= std::uint64_t(1) << u;
            support_paths_by_target_[v].push_back(static_cast<int>(support_paths_.size()));
            support_paths_.push_back(std::move(p));
            grow_support_paths(path, on_path | std::uint64_t(1) << v);
            path.pop_back();
        }
    }

    void build_chains() {
        std::vector<int> path;
        for (int s = 0; s < size(); ++s) {
            path = {s};
            grow_supported(path, std::uint64_t(1) << s);
            for (int v : attacks_out_[s]) {
                if (v == s) continue;
                path = {s, v};
                grow_secondary(path, (std::uint64_t(1) << s) | (std::uint64_t(1) << v));
            }
            path = {s};
            grow_support_paths(path, std::uint64_t(1) << s);
        }
    }

    const BAF* baf_;
    std::map<ArgumentId, int> index_;
    std::vector<std::vector<int>> supports_out_;
    std::vector<std::vector<int>> attacks_out_;
    std::vector<IndexedChain> chains_;
    std::vector<std::vector<int>> chains_by_target_;
    std::vector<IndexedSupportPath> support_paths_;
    std::vector<std::vector<int>> support_paths_by_target_;
    std::vector<std::uint64_t> attackers_mask_;
};

}  // namespace detail

constexpr std::size_t kDefaultEnumerationCap = 20;

inline std::vector<DefeatRecord> defeat_pairs(const BAF& f) {
    detail::BafAnalysis analysis(f);
    std::vector<DefeatRecord> out;
    for (const auto& ch : analysis.chains()) {
        DefeatRecord rec;
        rec.source = analysis.name_of(ch.source());
        rec.target = analysis.name_of(ch.target());
        rec.kind = ch.kind;
        for (int v : ch.nodes) rec.chain.push_back(analysis.name_of(v));
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const DefeatRecord& a, const DefeatRecord& b) {
        return std::tie(a.source, a.target, a.kind, a.chain) <
               std::tie(b.source, b.target, b.kind, b.chain);
    });
    return out;
}

inline bool is_conflict_free(const BAF& f, const ArgSet& s) {
    detail::BafAnalysis analysis(f);
    return analysis.conflict_free(analysis.mask_of(s));
}

inline bool is_safe(const BAF& f, const ArgSet& s) {
    detail::BafAnalysis analysis(f);
    return analysis.safe(analysis.mask_of(s));
}

inline bool is_closed(const BAF& f, const ArgSet& s) {
    detail::BafAnalysis analysis(f);
    return analysis.closed(analysis.mask_of(s));
}

inline bool defends(const BAF& f, const ArgSet& s, const ArgumentId& a) {
    detail::BafAnalysis analysis(f);
    return analysis.defends(analysis.mask_of(s), analysis.index_of(a));
}

inline bool admissibility(const BAF& f, const ArgSet& s, AdmissibilityFlavor flavor) {
    detail::BafAnalysis analysis(f);
    return analysis.admissible(analysis.mask_of(s), flavor);
}

namespace detail {

inline std::vector<ArgSet> to_sorted_sets(const BafAnalysis& analysis,
                                          const std::vector<std::uint64_t>& masks) {
    std::vector<ArgSet> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) out.push_back(analysis.set_of(m));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline std::vector<ArgSet> stable_extensions(const BAF& f,
                                             std::size_t cap = kDefaultEnumerationCap) {
    detail::BafAnalysis analysis(f);
    return detail::to_sorted_sets(analysis, analysis.stable_sets(cap));
}

inline std::vector<ArgSet> preferred_extensions(const BAF& f, AdmissibilityFlavor flavor,
                                                std::size_t cap = kDefaultEnumerationCap) {
    detail::BafAnalysis analysis(f);
    return detail::to_sorted_sets(analysis, analysis.preferred_sets(flavor, cap));
}

}  // namespace tbaf
