#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace sponge {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

BigInt pow_int(const BigInt& base, unsigned exponent);
Rational pow_rational(const Rational& base, unsigned exponent);

/// n^{-k} as an exact rational.
Rational inverse_power(int n, unsigned k);

/// Natural log of a positive big integer, safe for values beyond double range.
double log_bigint(const BigInt& value);
/// Natural log of a positive rational.
double log_rational(const Rational& value);

double to_double(const Rational& value);

/// "p/q" with q > 0; integers are written "p/1".
std::string to_string(const Rational& value);

/// Parses "p/q" or a bare integer. Throws SpongeError(ParseError).
Rational parse_rational(std::string_view text);

/// Closest rational to `value` whose denominator does not exceed `max_denominator`
/// (continued-fraction best approximation).
Rational limit_denominator(const Rational& value, const BigInt& max_denominator);

struct ParsedScale {
  Rational value;
  bool from_decimal = false;
  bool approximated = false;  // the decimal had no exact form within the bound
};

/// Accepts "p/q", integers and plain decimals ("0.25", "1e-3"). Decimals are
/// read exactly and then snapped to the nearest rational with denominator at
/// most 10^9.
ParsedScale parse_scale(std::string_view text);

}  // namespace sponge
