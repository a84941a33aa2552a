#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fpl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", a bare integer, or a plain decimal ("0.7072") into an exact
// rational. No exponents, no whitespace inside the number. Throws ParseError.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

bool is_power_of_two(const BigInt& value);
BigInt pow2(unsigned exponent);

}  // namespace fpl
