#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace subordkit {

/// Exact rational arithmetic for inequality certification.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", a plain integer "p", or a terminating decimal like "0.75".
/// Throws EvalError(Config) on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" rendering ("p" when the denominator is 1); round-trips
/// through parse_rational exactly.
std::string format_rational(const Rational& value);

double rational_to_double(const Rational& value);

}  // namespace subordkit
