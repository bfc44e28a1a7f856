#pragma once

// Exact rational arithmetic used throughout the library.
//
// Every quantity that originates from user input (file size, costs, storage
// amounts, download amounts) is kept as an exact GMP rational so that fixture
// values such as 43/12 compare with zero error. Floating point only appears
// at the output boundary (CSV, human-readable reports) and inside the
// optional floating-point simplex mode.

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace hetdss {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Absolute tolerance for every comparison that involves floating point.
inline constexpr double kTolerance = 1e-9;

/// Parses "7", "-3", "0.25", "1.5e-3" or "5/12". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// The exact binary value of `value` (no rounding). Throws on NaN/inf.
Rational rational_from_double(double value);

/// The shortest decimal that round-trips to `value`, read back exactly.
/// 0.1 becomes 1/10 rather than its binary approximation.
Rational rational_from_decimal_double(double value);

double to_double(const Rational& value);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Shortest round-trip decimal of the nearest double.
std::string to_decimal_string(const Rational& value);

inline bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace hetdss
