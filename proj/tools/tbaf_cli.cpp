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
#include "tbaf/timed_semantics.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFalse = 2;
constexpr int kExitCapExceeded = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

tbaf::TBAF load_framework(const std::string& path) {
    return tbaf::load_tbaf_json(slurp(path));
}

tbaf::EnumerationCaps caps_from_env() {
    tbaf::EnumerationCaps caps;
    const char* env = std::getenv("TBAF_CAPS");
    if (!env) return caps;
    std::string text(env);
    std::size_t a = text.find(','), b = text.find(',', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw std::runtime_error("TBAF_CAPS must be \"args,breakpoints,candidates\"");
    caps.max_arguments = std::stoul(text.substr(0, a));
    caps.max_breakpoints = std::stoul(text.substr(a + 1, b - a - 1));
    caps.max_candidates = std::stoul(text.substr(b + 1));
    return caps;
}

/// Singleton sets print as a bare interval, matching the grammar's
/// bare-interval shorthand.
std::string show_times(const tbaf::IntervalSet& s) {
    if (s.size() == 1) return tbaf::format_interval(s.intervals().front());
    return tbaf::format_interval_set(s);
}

int run_check(const std::string& framework_path, const std::string& collection_path,
              const std::string& predicate) {
    tbaf::TBAF f = load_framework(framework_path);
    if (collection_path.empty()) {
        tbaf::ValidationReport report = tbaf::validate(f);
        for (const auto& issue : report.issues)
            std::cout << (issue.error ? "error: " : "warning: ") << issue.message << "\n";
        std::cout << (report.ok() ? "valid" : "invalid") << "\n";
        return report.ok() ? kExitTrue : kExitUsage;
    }
    tbaf::Collection c = tbaf::load_collection_json(slurp(collection_path));
    for (const auto& [a, _] : c) {
        if (!f.baf.has_argument(a))
            throw tbaf::UnknownArgumentError("collection names unknown argument " + a);
        if (!tbaf::is_subset(*c.times(a), f.av(a)))
            throw std::runtime_error("profile of " + a + " exceeds its availability");
    }

    bool result = false;
    if (predicate == "conflict-free") result = tbaf::is_conflict_free_t(f, c);
    else if (predicate == "safe") result = tbaf::is_safe_t(f, c);
    else if (predicate == "closed") result = tbaf::is_closed_t(f, c);
    else if (predicate == "stable") result = tbaf::is_t_stable(f, c);
    else if (predicate == "admissible=td") result = tbaf::admissibility_t(f, c, tbaf::TimedFlavor::Td);
    else if (predicate == "admissible=ts") result = tbaf::admissibility_t(f, c, tbaf::TimedFlavor::Ts);
    else if (predicate == "admissible=tc") result = tbaf::admissibility_t(f, c, tbaf::TimedFlavor::Tc);
    else throw std::runtime_error("no predicate selected");
    std::cout << (result ? "true" : "false") << "\n";
    return result ? kExitTrue : kExitFalse;
}

int run_extensions(const std::string& framework_path, const std::string& semantics,
                   bool as_json) {
    tbaf::TBAF f = load_framework(framework_path);
    auto flavor = tbaf::parse_semantics_flavor(semantics);
    if (!flavor) throw std::runtime_error("unknown semantics '" + semantics + "'");
    tbaf::ExtensionReport report = tbaf::enumerate_extensions(f, *flavor, caps_from_env());

    if (as_json) {
        nlohmann::json doc;
        doc["semantics"] = tbaf::to_string(*flavor);
        doc["extensions"] = nlohmann::json::array();
        for (const tbaf::Collection& c : report.extensions) {
            nlohmann::json profiles = nlohmann::json::array();
            for (const auto& [a, times] : c)
                profiles.push_back({{"id", a}, {"times", tbaf::format_interval_set(times)}});
            doc["extensions"].push_back({{"profiles", std::move(profiles)}});
        }
        doc["skeptical"] = nlohmann::json::object();
        for (const auto& [a, times] : report.skeptical)
            doc["skeptical"][a] = tbaf::format_interval_set(times);
        std::cout << doc.dump(2) << "\n";
        return kExitTrue;
    }

    std::cout << report.extensions.size() << " " << tbaf::to_string(*flavor) << " extension"
              << (report.extensions.size() == 1 ? "" : "s") << "\n";
    std::size_t index = 1;
    for (const tbaf::Collection& c : report.extensions) {
        std::cout << "extension " << index++ << ":\n";
        for (const auto& [a, times] : c) std::cout << "  " << a << ": " << show_times(times) << "\n";
    }
    std::cout << "skeptical acceptance:\n";
    for (const auto& [a, times] : report.skeptical)
        std::cout << "  " << a << ": " << show_times(times) << "\n";
    return kExitTrue;
}

int run_snapshot(const std::string& framework_path, const std::string& at,
                 const std::string& semantics) {
    tbaf::TBAF f = load_framework(framework_path);
    auto t = tbaf::parse_rational(at);
    if (!t) throw std::runtime_error("cannot parse time point '" + at + "'");
    tbaf::BAF snapshot = tbaf::snapshot_at(f, *t);
    std::cout << "arguments:";
    for (const auto& a : snapshot.arguments) std::cout << " " << a;
    std::cout << "\nattacks:";
    for (const auto& [a, b] : snapshot.attacks) std::cout << " (" << a << "," << b << ")";
    std::cout << "\nsupports:";
    for (const auto& [a, b] : snapshot.supports) std::cout << " (" << a << "," << b << ")";
    std::cout << "\n";
    if (!semantics.empty()) {
        std::vector<tbaf::ArgSet> sets;
        if (semantics == "stable") sets = tbaf::stable_extensions(snapshot);
        else if (semantics == "d-preferred")
            sets = tbaf::preferred_extensions(snapshot, tbaf::AdmissibilityFlavor::D);
        else if (semantics == "s-preferred")
            sets = tbaf::preferred_extensions(snapshot, tbaf::AdmissibilityFlavor::S);
        else if (semantics == "c-preferred")
            sets = tbaf::preferred_extensions(snapshot, tbaf::AdmissibilityFlavor::C);
        else throw std::runtime_error("unknown classical semantics '" + semantics + "'");
        std::cout << semantics << " extensions:\n";
        for (const auto& s : sets) {
            std::cout << "  {";
            bool first = true;
            for (const auto& a : s) {
                if (!first) std::cout << ", ";
                std::cout << a;
                first = false;
            }
            std::cout << "}\n";
        }
    }
    return kExitTrue;
}

struct TimelineLayout {
    std::vector<tbaf::Rational> grid;
    std::vector<int> column;  // column of each grid value
    int width = 0;
};

TimelineLayout layout_timeline(const tbaf::TBAF& f) {
    std::vector<tbaf::IntervalSet> avail;
    for (const auto& a : f.baf.arguments) avail.push_back(f.av(a));
    TimelineLayout layout;
    layout.grid = tbaf::breakpoints(avail);
    if (layout.grid.empty()) return layout;

    tbaf::Rational span = layout.grid.back() - layout.grid.front();
    int col = 2;  // room for an unbounded left tail
    for (std::size_t i = 0; i < layout.grid.size(); ++i) {
        if (i > 0) {
            int gap = 1;
            if (span > 0) {
                tbaf::Rational w = (layout.grid[i] - layout.grid[i - 1]) * 48 / span;
                gap = std::max(1, static_cast<int>(boost::multiprecision::numerator(w) /
                                                   boost::multiprecision::denominator(w)));
            }
            col += gap;
        }
        layout.column.push_back(col);
        col += 1;
    }
    layout.width = col + 2;
    return layout;
}

int run_timeline(const tbaf::TBAF& f, const std::string& format) {
    TimelineLayout layout = layout_timeline(f);
    std::size_t name_width = 1;
    for (const auto& a : f.baf.arguments) name_width = std::max(name_width, a.size());

    if (format == "svg") {
        int row_height = 18;
        int height = static_cast<int>(f.baf.arguments.size() + 1) * row_height + 10;
        int scale = 8;
        std::cout << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
                  << (layout.width + 14) * scale << "\" height=\"" << height << "\">\n";
        for (std::size_t i = 0; i < layout.grid.size(); ++i)
            std::cout << "  <text x=\"" << (layout.column[i] + 8) * scale << "\" y=\"12\" "
                      << "font-size=\"10\" text-anchor=\"middle\">"
                      << tbaf::format_rational(layout.grid[i]) << "</text>\n";
        int y = row_height + 10;
        for (const auto& a : f.baf.arguments) {
            std::cout << "  <text x=\"2\" y=\"" << y + 4 << "\" font-size=\"10\">" << a
                      << "</text>\n";
            for (const tbaf::Interval& iv : f.av(a)) {
                int x1 = 2, x2 = layout.width;
                bool lo_closed = iv.lo().closed, hi_closed = iv.hi().closed;
                if (iv.lo().finite())
                    for (std::size_t i = 0; i < layout.grid.size(); ++i)
                        if (layout.grid[i] == iv.lo().value) x1 = layout.column[i];
                if (iv.hi().finite())
                    for (std::size_t i = 0; i < layout.grid.size(); ++i)
                        if (layout.grid[i] == iv.hi().value) x2 = layout.column[i];
                std::cout << "  <line x1=\"" << (x1 + 8) * scale << "\" y1=\"" << y
                          << "\" x2=\"" << (x2 + 8) * scale << "\" y2=\"" << y
                          << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
                if (iv.lo().finite())
                    std::cout << "  <circle cx=\"" << (x1 + 8) * scale << "\" cy=\"" << y
                              << "\" r=\"3\" fill=\"" << (lo_closed ? "black" : "white")
                              << "\" stroke=\"black\"/>\n";
                if (iv.hi().finite())
                    std::cout << "  <circle cx=\"" << (x2 + 8) * scale << "\" cy=\"" << y
                              << "\" r=\"3\" fill=\"" << (hi_closed ? "black" : "white")
                              << "\" stroke=\"black\"/>\n";
            }
            y += row_height;
        }
        std::cout << "</svg>\n";
        return kExitTrue;
    }

    // Ruler with breakpoint labels.
    std::string ruler(layout.width + static_cast<int>(name_width) + 12, ' ');
    for (std::size_t i = 0; i < layout.grid.size(); ++i) {
        std::string label = tbaf::format_rational(layout.grid[i]);
        std::size_t pos = name_width + 2 + layout.column[i];
        if (pos + label.size() < ruler.size()) {
            bool free = pos == 0 || ruler[pos - 1] == ' ';
            for (std::size_t k = 0; k <= label.size() && free; ++k)
                if (ruler[pos + k] != ' ') free = false;
            if (free) ruler.replace(pos, label.size(), label);
        }
    }
    std::cout << ruler << "\n";

    for (const auto& a : f.baf.arguments) {
        const tbaf::IntervalSet& av = f.av(a);
        std::string row(layout.width, ' ');
        auto column_of = [&](const tbaf::Rational& v) -> int {
            for (std::size_t i = 0; i < layout.grid.size(); ++i)
                if (layout.grid[i] == v) return layout.column[i];
            return -1;
        };
        for (const tbaf::Interval& iv : av) {
            int from = iv.lo().finite() ? column_of(iv.lo().value) : 0;
            int to = iv.hi().finite() ? column_of(iv.hi().value) : layout.width - 1;
            for (int x = from; x <= to; ++x) row[x] = '-';
            // Breakpoint columns inside the interval read '='.
            for (std::size_t i = 0; i < layout.grid.size(); ++i)
                if (iv.contains(layout.grid[i])) row[layout.column[i]] = '=';
            if (iv.lo().finite()) row[column_of(iv.lo().value)] = iv.lo().closed ? '[' : '(';
            if (iv.hi().finite()) row[column_of(iv.hi().value)] = iv.hi().closed ? ']' : ')';
            if (iv.lo().finite() && iv.hi().finite() && iv.lo().value == iv.hi().value)
                row[column_of(iv.lo().value)] = '=';
        }
        std::string name = a;
        name.resize(name_width, ' ');
        std::cout << name << "  " << row;
        if (av.empty()) std::cout << " (empty availability)";
        std::cout << "\n";
    }
    return kExitTrue;
}

int run_defeats(const std::string& framework_path) {
    tbaf::TBAF f = load_framework(framework_path);
    for (const tbaf::TimedDefeatRecord& rec : tbaf::timed_defeat_records(f)) {
        std::cout << rec.source << " → " << rec.target << " " << tbaf::to_string(rec.kind)
                  << " via [";
        for (std::size_t i = 0; i < rec.chain.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << rec.chain[i];
        }
        std::cout << "] : " << tbaf::format_interval_set(rec.time) << "\n";
    }
    return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timed bipolar argumentation framework solver"};
    app.require_subcommand(1);

    std::string framework_path, collection_path, semantics, at_point, format = "ascii";
    bool json_output = false;
    bool flag_cf = false, flag_safe = false, flag_closed = false, flag_stable = false;
    std::string admissible_flavor;

    CLI::App* check = app.add_subcommand("check", "verify a collection against a framework");
    check->add_option("framework", framework_path, "framework JSON file")->required();
    check->add_option("collection", collection_path, "collection JSON file");
    check->add_flag("--conflict-free", flag_cf, "conflict-freeness over time");
    check->add_flag("--safe", flag_safe, "safety over time");
    check->add_flag("--closed", flag_closed, "closure under support over time");
    check->add_flag("--stable", flag_stable, "t-stable extension check");
    check->add_option("--admissible", admissible_flavor, "admissibility flavor: td|ts|tc");

    CLI::App* extensions = app.add_subcommand("extensions", "enumerate timed extensions");
    extensions->add_option("framework", framework_path, "framework JSON file")->required();
    extensions->add_option("--semantics", semantics, "t-stable|td-preferred|ts-preferred|tc-preferred")
        ->required();
    extensions->add_flag("--json", json_output, "machine-readable output");

    CLI::App* snapshot = app.add_subcommand("snapshot", "classical framework at a time point");
    snapshot->add_option("framework", framework_path, "framework JSON file")->required();
    snapshot->add_option("--at", at_point, "time point (exact decimal or p/q)")->required();
    snapshot->add_option("--semantics", semantics,
                         "classical semantics: stable|d-preferred|s-preferred|c-preferred");

    CLI::App* timeline = app.add_subcommand("timeline", "availability timeline");
    timeline->add_option("framework", framework_path, "framework JSON file")->required();
    timeline->add_option("--format", format, "ascii|svg")
        ->check(CLI::IsMember({"ascii", "svg"}));

    CLI::App* defeats = app.add_subcommand("defeats", "timed defeat table over basic profiles");
    defeats->add_option("framework", framework_path, "framework JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitTrue : kExitUsage;
    }

    try {
        if (check->parsed()) {
            int flags = int(flag_cf) + int(flag_safe) + int(flag_closed) + int(flag_stable) +
                        int(!admissible_flavor.empty());
            if (!collection_path.empty() && flags != 1) {
                std::cerr << "check: exactly one predicate flag is required\n";
                return kExitUsage;
            }
            if (collection_path.empty() && flags != 0) {
                std::cerr << "check: predicate flags need a collection file\n";
                return kExitUsage;
            }
            std::string predicate = flag_cf ? "conflict-free"
                                  : flag_safe ? "safe"
                                  : flag_closed ? "closed"
                                  : flag_stable ? "stable"
                                  : "admissible=" + admissible_flavor;
            if (!admissible_flavor.empty() && admissible_flavor != "td" &&
                admissible_flavor != "ts" && admissible_flavor != "tc") {
                std::cerr << "check: --admissible takes td, ts or tc\n";
                return kExitUsage;
            }
            return run_check(framework_path, collection_path, predicate);
        }
        if (extensions->parsed()) return run_extensions(framework_path, semantics, json_output);
        if (snapshot->parsed()) return run_snapshot(framework_path, at_point, semantics);
        if (timeline->parsed()) return run_timeline(load_framework(framework_path), format);
        if (defeats->parsed()) return run_defeats(framework_path);
    } catch (const tbaf::CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
