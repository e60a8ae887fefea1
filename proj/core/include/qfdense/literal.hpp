#pragma once

#include <string>
#include <string_view>

#include "qfdense/fixed_real.hpp"

namespace qfdense {

/// A parsed real-number literal.
///
/// Grammar (whole string, no whitespace):
///   p/q | p           rational, q > 0
///   sqrt:d            sqrt(d), d >= 0
///   surd:u,v,w,d      (u + v*sqrt(d)) / w, w != 0, d >= 0
///   dec:[+-]D[.D]     decimal; the value is the exact decimal rational
///   pi
struct RealLiteral {
  enum class Kind { rational, sqrt, surd, decimal, pi };

  Kind kind = Kind::rational;
  std::string text;
  Rational rational;             // rational and decimal kinds
  Integer u = 0, v = 0, w = 1, d = 0;  // sqrt and surd kinds
  /// Half a unit in the last written digit (decimal kind only).
  Rational decimal_tolerance;

  /// True when the literal denotes a rational number.
  bool is_rational() const;
  FixedReal evaluate(int frac_bits = kDefaultFracBits) const;
};

/// Throws InvalidInput on anything outside the grammar.
RealLiteral parse_real_literal(std::string_view text);

/// Convenience: parse and evaluate.
FixedReal parse_real(std::string_view text, int frac_bits = kDefaultFracBits);

}  // namespace qfdense
