#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigma {

// Arbitrary-precision, always-reduced rational. Measure logic never touches
// floating point.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", "p" and an optional leading sign. Throws Error(Parse).
Rational parse_rational(std::string_view text);

// "p/q" with q > 1, or "p" when the value is an integer.
std::string to_string(const Rational& value);

Rational sum(std::span<const Rational> values);

std::string format_weights(std::span<const Rational> values);

}  // namespace sigma
