#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "qfdense/numeric.hpp"

namespace qfdense {

inline constexpr int kDefaultFracBits = 256;
inline constexpr int kMinFracBits = 64;

/// Default absolute tolerance, as log2, that reduced quantities (torus
/// coordinates, phases, form values) must meet before they are used.
inline constexpr int kDefaultToleranceLog2 = -40;

/// Signed binary fixed-point real with a tracked error radius.
///
/// The represented interval is (mantissa +- error_ulps) * 2^-frac_bits and
/// always contains the true value. Values that are known to be rational are
/// additionally carried exactly, so that rational inputs keep exact
/// comparisons, exact rounding and terminating continued fractions.
///
/// All binary operations require both operands to share frac_bits.
class FixedReal {
 public:
  FixedReal() : FixedReal(kDefaultFracBits) {}
  explicit FixedReal(int frac_bits);

  static FixedReal from_integer(const Integer& v, int frac_bits = kDefaultFracBits);
  static FixedReal from_int(long v, int frac_bits = kDefaultFracBits) {
    return from_integer(Integer(v), frac_bits);
  }
  static FixedReal from_rational(const Rational& v, int frac_bits = kDefaultFracBits);
  /// Exact whenever the double's binary expansion fits in frac_bits.
  static FixedReal from_double(double v, int frac_bits = kDefaultFracBits);
  /// (u + v*sqrt(d)) / w, d >= 0, w != 0. Error at most 2 ulps.
  static FixedReal from_surd(const Integer& u, const Integer& v, const Integer& w,
                             const Integer& d, int frac_bits = kDefaultFracBits);
  static FixedReal sqrt(const Integer& d, int frac_bits = kDefaultFracBits) {
    return from_surd(0, 1, 1, d, frac_bits);
  }
  static FixedReal pi(int frac_bits = kDefaultFracBits);
  static FixedReal from_raw(Integer mantissa, Integer error_ulps, int frac_bits);

  int frac_bits() const { return bits_; }
  const Integer& mantissa() const { return mant_; }
  const Integer& error_ulps() const { return err_; }

  /// The exact value when it is known to be rational (including every value
  /// with zero error radius).
  std::optional<Rational> known_rational() const;
  bool is_exact() const { return err_ == 0 || exact_.has_value(); }

  double to_double() const;
  /// Upper bound on the absolute error, as a double.
  double error_bound() const;
  /// True iff error <= 2^log2_tol.
  bool error_within(int log2_tol) const;
  /// Throws PrecisionExhausted naming `what` unless error_within(log2_tol).
  void require_error_within(int log2_tol, std::string_view what) const;

  /// Same value at a different precision (rounding adds at most 1 ulp).
  FixedReal with_bits(int frac_bits) const;

  /// Lower and upper endpoints of the tracked interval as exact values.
  FixedReal lower() const;
  FixedReal upper() const;

  FixedReal operator-() const;
  FixedReal abs() const;
  /// x - floor(x), in [0, 1).
  FixedReal frac() const;
  /// Distance to the nearest integer, in [0, 1/2].
  FixedReal circle_norm() const;
  /// Throw PrecisionExhausted when the interval straddles an integer.
  Integer floor() const;
  /// Nearest integer, ties to even. Throws when the interval straddles a
  /// half-integer.
  Integer round_half_even() const;
  /// -1, 0 or 1; throws when the sign is not determined.
  int sign() const;

  friend FixedReal operator+(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator-(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator*(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator/(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator*(const FixedReal& a, const Integer& k);
  friend FixedReal operator*(const Integer& k, const FixedReal& a) { return a * k; }
  friend FixedReal operator/(const FixedReal& a, const Integer& k);

  FixedReal& operator+=(const FixedReal& o) { return *this = *this + o; }
  FixedReal& operator-=(const FixedReal& o) { return *this = *this - o; }
  FixedReal& operator*=(const FixedReal& o) { return *this = *this * o; }

  /// Decimal rendering with `digits` digits after the point (rounded).
  std::string to_decimal(int digits) const;

 private:
  FixedReal(Integer mant, Integer err, int bits, std::optional<Rational> exact);
  void check_same_bits(const FixedReal& o) const;

  Integer mant_;
  Integer err_;
  int bits_;
  // Set only for rational values whose mantissa is not exact (err_ != 0).
  std::optional<Rational> exact_;
};

/// Certified ordering: `unordered` when the tracked intervals overlap and
/// the values are not both exact.
std::partial_ordering certified_compare(const FixedReal& a, const FixedReal& b);

/// Natural log of |x|; x must not be an exact zero.
double log_abs(const FixedReal& x);

/// a <= b, throwing PrecisionExhausted (naming `what`) if undecidable.
bool certified_le(const FixedReal& a, const FixedReal& b, std::string_view what);

}  // namespace qfdense
