#ifndef MIRRORGW_RATIONAL_HPP
#define MIRRORGW_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mirrorgw {

// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

Rational factorial(unsigned k);
Rational binomial(long n, long k);

} // namespace mirrorgw

#endif
