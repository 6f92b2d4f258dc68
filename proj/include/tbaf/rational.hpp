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

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace tbaf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses a decimal literal ("12", "-3.25", "+0.5") or a fraction "p/q"
/// into an exact rational. Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = (text[pos] == '-');
        ++pos;
    }
    if (pos >= text.size()) return std::nullopt;

    BigInt numerator = 0;
    bool any_digit = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        numerator = numerator * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    if (!any_digit) return std::nullopt;

    BigInt denominator = 1;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        bool frac_digit = false;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            numerator = numerator * 10 + (text[pos] - '0');
            denominator *= 10;
            frac_digit = true;
            ++pos;
        }
        if (!frac_digit) return std::nullopt;
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        BigInt q = 0;
        bool q_digit = false;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            q = q * 10 + (text[pos] - '0');
            q_digit = true;
            ++pos;
        }
        if (!q_digit || q == 0) return std::nullopt;
        denominator = q;
    }
    if (pos != text.size()) return std::nullopt;

    Rational value(numerator, denominator);
    if (negative) value = -value;
    return value;
}

/// Formats a rational exactly: decimal when the expansion terminates
/// (denominator has only factors 2 and 5), otherwise "p/q".
inline std::string format_rational(const Rational& value) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;

    // Count factors of 2 and 5 in the (already reduced) denominator.
    BigInt rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) {
        std::string out = negative ? "-" : "";
        out += num.str();
        out += "/";
        out += den.str();
        return out;
    }
    unsigned digits = twos > fives ? twos : fives;
    for (unsigned i = fives; i < digits; ++i) num *= 5;
    for (unsigned i = twos; i < digits; ++i) num *= 2;

    std::string body = num.str();
    std::string out = negative ? "-" : "";
    if (digits == 0) {
        out += body;
        return out;
    }
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
    out += body;
    return out;
}

}  // namespace tbaf
