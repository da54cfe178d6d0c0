#include "egyptsum/rational.hpp"

#include <cstdint>
#include <limits>

#include "egyptsum/errors.hpp"

namespace egyptsum {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer integer_from_parts(std::string_view text, std::string_view original) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) {
    throw ParseError("not an exact integer or rational literal: '" + std::string(original) + "'");
  }
  Integer value(std::string(text), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Integer parse_integer(std::string_view text) { return integer_from_parts(text, text); }

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(integer_from_parts(text, text));
  }
  const auto den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    throw ParseError("bad denominator in '" + std::string(text) + "'");
  }
  Integer num = integer_from_parts(text.substr(0, slash), text);
  Integer den(std::string(den_text), 10);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  // gmpxx prints "p" for integral values and "p/q" otherwise.
  Rational canonical(value);
  canonical.canonicalize();
  return canonical.get_str(10);
}

Rational dyadic_radius(unsigned k) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(Integer(1), den);
}

unsigned resolution_for(const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("resolution_for requires a positive radius");
  unsigned k = 0;
  Rational radius(1);
  while (radius > eps) {
    radius /= 2;
    ++k;
  }
  return k;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace egyptsum
