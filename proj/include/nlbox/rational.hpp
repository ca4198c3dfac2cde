#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nlbox {

/// Exact arbitrary-precision rational. All probabilities and weights in the
/// library are stored in this type; no floating point enters a probability
/// table. boost keeps the value in canonical form (reduced, denominator > 0).
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

/// Parses "p/q" or a bare integer "p". Throws ParseError on malformed input
/// or a zero denominator.
Rat parse_rat(const std::string& text);

/// Canonical "p/q" rendering, denominator always present ("4" prints as "4/1").
std::string rat_str(const Rat& value);

/// r^n for n >= 0 by repeated squaring.
Rat rat_pow(const Rat& base, unsigned exponent);

inline double rat_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace nlbox
