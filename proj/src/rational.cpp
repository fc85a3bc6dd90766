#include "sponge/rational.hpp"

#include "sponge/errors.hpp"

#include <cctype>
#include <cmath>

namespace sponge {

BigInt pow_int(const BigInt& base, unsigned exponent) {
  BigInt result;
  mpz_pow_ui(result.backend().data(), base.backend().data(), exponent);
  return result;
}

Rational pow_rational(const Rational& base, unsigned exponent) {
  return Rational(pow_int(numerator(base), exponent), pow_int(denominator(base), exponent));
}

Rational inverse_power(int n, unsigned k) { return Rational(BigInt(1), pow_int(BigInt(n), k)); }

double log_bigint(const BigInt& value) {
  if (value <= 0) {
    throw SpongeError(ErrorKind::OutOfRange, "logarithm of a non-positive integer");
  }
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.backend().data());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double log_rational(const Rational& value) {
  return log_bigint(numerator(value)) - log_bigint(denominator(value));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool is_integer_text(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text) {
  if (!is_integer_text(text)) {
    throw SpongeError(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  const bool negative = text.front() == '-';
  if (text.front() == '+' || negative) text.remove_prefix(1);
  // BigInt's string constructor reads a leading 0 as an octal prefix.
  while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
  const BigInt value(std::string{text});
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

// Exact value of a decimal literal such as "-12.5e-3".
Rational parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&] {
    throw SpongeError(ErrorKind::ParseError, "not a number: '" + original + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    const std::string_view exponent = text.substr(i + 1);
    if (!is_integer_text(exponent) || exponent.size() > 6) fail();
    scale += std::stol(std::string(exponent));
  }
  // BigInt's string constructor reads a leading 0 as an octal prefix.
  const std::size_t first = digits.find_first_not_of('0');
  Rational value{first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first))};
  if (scale > 0) value *= Rational(pow_int(BigInt(10), static_cast<unsigned>(scale)));
  if (scale < 0) value /= Rational(pow_int(BigInt(10), static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const BigInt num = parse_integer(trim(text.substr(0, slash)));
  const BigInt den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw SpongeError(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational limit_denominator(const Rational& value, const BigInt& max_denominator) {
  if (denominator(value) <= max_denominator) return value;
  // Convergents p/q of the continued fraction, plus the best semiconvergent.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = numerator(value), d = denominator(value);
  while (true) {
    BigInt a = n / d;
    if (n < 0 && a * d != n) a -= 1;  // floor for negative values
    const BigInt q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const BigInt p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const BigInt rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  const BigInt k = (max_denominator - q0) / q1;
  const Rational bound1(p0 + k * p1, q0 + k * q1);
  const Rational bound2(p1, q1);
  const Rational e1 = abs(bound1 - value);
  const Rational e2 = abs(bound2 - value);
  return e2 <= e1 ? bound2 : bound1;
}

ParsedScale parse_scale(std::string_view text) {
  text = trim(text);
  ParsedScale out;
  if (text.find('/') != std::string_view::npos || is_integer_text(text)) {
    out.value = parse_rational(text);
    return out;
  }
  const Rational exact = parse_decimal(text);
  out.from_decimal = true;
  out.value = limit_denominator(exact, BigInt(1000000000));
  out.approximated = out.value != exact;
  return out;
}

}  // namespace sponge
