#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace capkc {

// Every LP value, flow amount and shift parameter is an exact rational.
using Rational = mpq_class;

// Accepts "p", "p/q" and plain decimals such as "0.75". Throws
// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// gmpxx has no long long constructor; capacities are stored as long long.
inline Rational rational_of(long long v) { return Rational(static_cast<long>(v)); }

// num / den in lowest terms; the two-argument mpq_class constructor does not
// canonicalize, and GMP comparisons assume canonical operands.
inline Rational fraction(long long num, long long den) {
  return rational_of(num) / rational_of(den);
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

mpz_class floor_of(const Rational& q);
mpz_class ceil_of(const Rational& q);

// q - floor(q), always in [0, 1).
Rational fractional_part(const Rational& q);

}  // namespace capkc
