#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace zipshift {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "3", "-1/2" and finite decimals like "0.5". Throws ParseError.
Rational parse_rational(std::string_view text);
// "p/q" in lowest terms, or "p" when q == 1.
std::string format_rational(const Rational& r);

}  // namespace zipshift
