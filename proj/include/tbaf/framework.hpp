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

#include "tbaf/interval.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbaf {

using ArgumentId = std::string;
using RelationPair = std::pair<ArgumentId, ArgumentId>;

enum class RelationKind { Attack, Support };

class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& what, std::string path)
        : std::runtime_error(what + " [" + path + "]"), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class NoSuchRelationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownArgumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool valid_argument_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        switch (c) {
            case '-': case ',': case '{': case '}':
            case '[': case ']': case '(': case ')':
            case ' ': case '\t': case '\n': case '\r':
                return false;
            default:
                break;
        }
    }
    return true;
}

/// Untimed bipolar framework: arguments plus disjoint attack and support
/// relations. Stored fully canonical (everything sorted).
struct BAF {
    std::vector<ArgumentId> arguments;
    std::vector<RelationPair> attacks;
    std::vector<RelationPair> supports;

    void canonicalize() {
        auto dedupe = [](auto& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        dedupe(arguments);
        dedupe(attacks);
        dedupe(supports);
    }

    bool has_argument(const ArgumentId& a) const {
        return std::binary_search(arguments.begin(), arguments.end(), a);
    }

    bool has_relation(RelationKind kind, const ArgumentId& a, const ArgumentId& b) const {
        const auto& rel = kind == RelationKind::Attack ? attacks : supports;
        return std::binary_search(rel.begin(), rel.end(), RelationPair(a, b));
    }

    friend bool operator==(const BAF&, const BAF&) = default;
};

/// Timed bipolar framework: a BAF plus an availability function.
struct TBAF {
    BAF baf;
    std::map<ArgumentId, IntervalSet> availability;

    const IntervalSet& av(const ArgumentId& a) const {
        auto it = availability.find(a);
        if (it == availability.end())
            throw UnknownArgumentError("no availability entry for argument " + a);
        return it->second;
    }
};

struct ValidationIssue {
    enum class Kind {
        RelationOverlap,
        UnknownArgument,
        DuplicateArgument,
        EmptyAvailability,
        SelfSupport,
        MissingAvailability,
    };
    Kind kind;
    bool error;  // otherwise a warning
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const {
        return std::none_of(issues.begin(), issues.end(),
                            [](const ValidationIssue& i) { return i.error; });
    }
    std::vector<ValidationIssue> errors() const {
        std::vector<ValidationIssue> out;
        for (const auto& i : issues)
            if (i.error) out.push_back(i);
        return out;
    }
};

inline ValidationReport validate(const TBAF& f) {
    ValidationReport report;
    auto add = [&report](ValidationIssue::Kind kind, bool error, std::string message) {
        report.issues.push_back({kind, error, std::move(message)});
    };

    std::set<ArgumentId> seen;
    for (const ArgumentId& a : f.baf.arguments) {
        if (!seen.insert(a).second)
            add(ValidationIssue::Kind::DuplicateArgument, true, "duplicate argument " + a);
    }

    auto check_pairs = [&](const std::vector<RelationPair>& rel, const char* label) {
        for (const auto& [a, b] : rel) {
            if (!seen.count(a))
                add(ValidationIssue::Kind::UnknownArgument, true,
                    std::string(label) + " names unknown argument " + a);
            if (!seen.count(b))
                add(ValidationIssue::Kind::UnknownArgument, true,
                    std::string(label) + " names unknown argument " + b);
        }
    };
    check_pairs(f.baf.attacks, "attack");
    check_pairs(f.baf.supports, "support");

    for (const auto& p : f.baf.attacks) {
        if (std::binary_search(f.baf.supports.begin(), f.baf.supports.end(), p))
            add(ValidationIssue::Kind::RelationOverlap, true,
                "pair (" + p.first + "," + p.second + ") is both an attack and a support");
    }

    for (const auto& [a, b] : f.baf.supports) {
        if (a == b)
            add(ValidationIssue::Kind::SelfSupport, false, "argument " + a + " supports itself");
    }

    for (const ArgumentId& a : f.baf.arguments) {
        auto it = f.availability.find(a);
        if (it == f.availability.end())
            add(ValidationIssue::Kind::MissingAvailability, true,
                "argument " + a + " has no availability entry");
        else if (it->second.empty())
            add(ValidationIssue::Kind::EmptyAvailability, false,
                "argument " + a + " has empty availability");
    }
    return report;
}

/// Span where a relation pair is active: the intersection of the two
/// endpoint availabilities.
inline IntervalSet relation_time(const TBAF& f, RelationKind kind, const ArgumentId& a,
                                 const ArgumentId& b) {
    if (!f.baf.has_relation(kind, a, b))
        throw NoSuchRelationError("no such " +
                                  std::string(kind == RelationKind::Attack ? "attack" : "support") +
                                  " (" + a + "," + b + ")");
    return intersect(f.av(a), f.av(b));
}

/// Classical framework induced at a single time point.
inline BAF snapshot_at(const TBAF& f, const Rational& t) {
    BAF out;
    for (const ArgumentId& a : f.baf.arguments)
        if (f.av(a).contains(t)) out.arguments.push_back(a);
    auto keep = [&](const RelationPair& p) {
        return f.av(p.first).contains(t) && f.av(p.second).contains(t);
    };
    for (const auto& p : f.baf.attacks)
        if (keep(p)) out.attacks.push_back(p);
    for (const auto& p : f.baf.supports)
        if (keep(p)) out.supports.push_back(p);
    out.canonicalize();
    return out;
}

inline BAF to_baf(const TBAF& f) { return f.baf; }

// ---------------------------------------------------------------------------
// JSON serialization.
// Schema: { "arguments": [ { "id": string, "availability": string } ],
//           "attacks": [ [string,string] ], "supports": [ [string,string] ] }
// Unknown keys are rejected.
// ---------------------------------------------------------------------------

inline TBAF load_tbaf_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not a JSON document: ") + e.what(), "$");
    }
    if (!doc.is_object()) throw SchemaError("top level must be an object", "$");
    for (const auto& [key, _] : doc.items()) {
        if (key != "arguments" && key != "attacks" && key != "supports")
            throw SchemaError("unknown key '" + key + "'", "$." + key);
    }
    if (!doc.contains("arguments") || !doc["arguments"].is_array())
        throw SchemaError("'arguments' must be an array", "$.arguments");

    TBAF f;
    std::size_t index = 0;
    for (const auto& entry : doc["arguments"]) {
        std::string path = "$.arguments[" + std::to_string(index) + "]";
        if (!entry.is_object()) throw SchemaError("argument entry must be an object", path);
        for (const auto& [key, _] : entry.items()) {
            if (key != "id" && key != "availability")
                throw SchemaError("unknown key '" + key + "'", path + "." + key);
        }
        if (!entry.contains("id") || !entry["id"].is_string())
            throw SchemaError("argument 'id' must be a string", path + ".id");
        std::string id = entry["id"].get<std::string>();
        if (!valid_argument_name(id))
            throw SchemaError("invalid argument name '" + id + "'", path + ".id");
        if (f.availability.count(id))
            throw SchemaError("duplicate argument id '" + id + "'", path + ".id");
        IntervalSet av;
        if (entry.contains("availability")) {
            if (!entry["availability"].is_string())
                throw SchemaError("'availability' must be a string", path + ".availability");
            av = parse_interval_set(entry["availability"].get<std::string>());
        }
        f.baf.arguments.push_back(id);
        f.availability.emplace(std::move(id), std::move(av));
        ++index;
    }

    auto read_pairs = [&doc](const char* key) {
        std::vector<RelationPair> out;
        if (!doc.contains(key)) return out;
        const auto& arr = doc[key];
        std::string base = std::string("$.") + key;
        if (!arr.is_array()) throw SchemaError("must be an array of pairs", base);
        std::size_t i = 0;
        for (const auto& item : arr) {
            std::string path = base + "[" + std::to_string(i) + "]";
            if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
                !item[1].is_string())
                throw SchemaError("relation entry must be a [from,to] string pair", path);
            out.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
            ++i;
        }
        return out;
    };
    f.baf.attacks = read_pairs("attacks");
    f.baf.supports = read_pairs("supports");
    f.baf.canonicalize();

    ValidationReport report = validate(f);
    if (!report.ok()) {
        std::string all;
        for (const auto& issue : report.errors()) {
            if (!all.empty()) all += "; ";
            all += issue.message;
        }
        throw SchemaError("invalid framework: " + all, "$");
    }
    return f;
}

inline std::string save_tbaf_json(const TBAF& f) {
    nlohmann::json doc;
    doc["arguments"] = nlohmann::json::array();
    for (const ArgumentId& a : f.baf.arguments) {
        nlohmann::json entry;
        entry["id"] = a;
        entry["availability"] = format_interval_set(f.av(a));
        doc["arguments"].push_back(std::move(entry));
    }
    auto dump_pairs = [](const std::vector<RelationPair>& rel) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [a, b] : rel) arr.push_back(nlohmann::json::array({a, b}));
        return arr;
    };
    doc["attacks"] = dump_pairs(f.baf.attacks);
    doc["supports"] = dump_pairs(f.baf.supports);
    return doc.dump(2) + "\n";
}

/// Lifts an untimed framework by giving every argument the same
/// availability.
inline TBAF lift_uniform(const BAF& baf, const IntervalSet& availability) {
    TBAF f;
    f.baf = baf;
    f.baf.canonicalize();
    for (const ArgumentId& a : f.baf.arguments) f.availability.emplace(a, availability);
    return f;
}

}  // namespace tbaf
