#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qfdense {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2^k as an Integer, k >= 0.
Integer pow2(unsigned long k);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

/// n / d rounded to nearest, ties to even. d != 0.
Integer div_round_even(const Integer& n, const Integer& d);

/// ceil(n / d) for n >= 0, d > 0.
Integer div_ceil(const Integer& n, const Integer& d);

/// Nearest integer to r, ties to even.
Integer round_even(const Rational& r);

Integer floor(const Rational& r);

Integer gcd(const Integer& a, const Integer& b);

/// (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Integer g, x, y;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

inline std::string to_string(const Integer& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace qfdense
