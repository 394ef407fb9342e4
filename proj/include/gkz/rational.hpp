#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gkz {

/// Exact rational scalar. GMP keeps it canonical: denominator > 0 and
/// gcd(|num|, den) = 1 after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". Decimals and exponents are rejected.
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, otherwise "p/q".
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);
bool is_natural(const Rational& r);

/// Requires is_integer(r) and |r| to fit in int64.
std::int64_t to_int64(const Rational& r);

/// Largest integer <= r.
Integer floor(const Rational& r);

/// Natural log of |r| for r != 0, safe for numbers far outside double range.
double log_abs(const Rational& r);
double log_abs(const Integer& z);

/// Descending product z (z-1) ... (z-n+1); empty product for n = 0.
Rational falling(const Rational& z, std::int64_t n);

/// Ascending-top product (z+1)(z+2)...(z+n); empty product for n = 0.
Rational rising_from_next(const Rational& z, std::int64_t n);

Integer factorial(std::int64_t n);

}  // namespace gkz
