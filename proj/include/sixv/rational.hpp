#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sixv {

/// Arbitrary-precision rational, always kept in lowest terms.
/// Every probability on the exact path is one of these; floating point only
/// shows up in the Monte Carlo estimator.
using Rational = mpq_class;

/// Parses "num/den" or a bare integer. Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are still written with "/1".
std::string to_string(const Rational& value);

Rational pow(const Rational& base, std::uint64_t exponent);

inline bool is_open_unit(const Rational& value) { return value > 0 && value < 1; }

}  // namespace sixv
