#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cubepaths {

/// Exact rational scalar used for every coordinate, time and length.
using Rational = mpq_class;

/// A point of [0,1]^n (or R^n) in exact arithmetic.
using Coords = std::vector<Rational>;

Rational make_rational(long num, long den = 1);

/// Parses "p/q", "p" or "-p/q"; the result is canonicalized.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

std::string to_string(const Coords& coords);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace cubepaths
