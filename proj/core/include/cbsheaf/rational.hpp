#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cbsheaf {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). GMP keeps this invariant after every arithmetic operation.
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q". Throws Error on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace cbsheaf
