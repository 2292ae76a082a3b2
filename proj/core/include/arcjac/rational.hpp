#pragma once

#include <gmpxx.h>

#include <string>

namespace arcjac {

// Exact rational scalar. All coefficient arithmetic in the library is exact;
// there is no floating point anywhere.
using Rational = mpq_class;

// Parses "n", "-n", or "n/d" (decimal digits). Canonicalizes sign and gcd.
// Throws ValidationError on anything else, including zero denominators.
Rational parse_rational(const std::string& text);

// Canonical decimal form, "n" or "n/d" with d > 1.
std::string rational_to_string(const Rational& value);

// If value is the square of a rational, stores the nonnegative root and
// returns true. value must be canonical (mpq_class keeps it so).
bool rational_sqrt(const Rational& value, Rational* root);

}  // namespace arcjac
