#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace egyptsum {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or a signed integer. Decimal points, exponents and
/// surrounding whitespace are rejected; the result is in lowest terms.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical form: lowest terms, "p/q", or "p" when q == 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// 2^-k.
Rational dyadic_radius(unsigned k);

/// Smallest k with 2^-k <= eps. Requires eps > 0.
unsigned resolution_for(const Rational& eps);

/// Saturating multiply for work estimates.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace egyptsum
