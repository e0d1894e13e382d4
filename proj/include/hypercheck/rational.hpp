#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "hypercheck/error.hpp"

namespace hypercheck {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (digits.empty()) {
        throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw InvalidInput("malformed rational '" + std::string(whole) + "'");
        }
    }
    return Integer(std::string(text.front() == '+' ? text.substr(1) : text));
}

} // namespace detail

/// Parses "p/q" or "p" (optional sign on p). Rejects zero denominators.
inline Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_integer(text, text));
    }
    Integer num = detail::parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    Integer den = detail::parse_integer(den_text, text);
    if (den == 0) {
        throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

/// Canonical "p/q" form ("p" for integers), as used in every serialized payload.
inline std::string to_string(const Rational& value)
{
    return value.str();
}

} // namespace hypercheck
