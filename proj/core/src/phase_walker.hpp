#pragma once

#include <cstdint>

#include "qfdense/fixed_real.hpp"

namespace qfdense::detail {

/// Walks V(m) = A m^2 + B m + C mod 1 forward from m0 using the first and
/// second differences, all in F-bit fixed point modulo 2^F. Errors add up
/// exactly as in the closed form; callers restart from the closed form at
/// every chunk boundary.
class PhaseWalker {
 public:
  PhaseWalker(const FixedReal& A, const FixedReal& B, const FixedReal& C, std::int64_t m0);

  std::int64_t m() const { return m_; }
  /// Mantissa of V(m) mod 1, in [0, 2^F).
  const Integer& value() const { return v_; }
  const Integer& error() const { return ev_; }
  int frac_bits() const { return bits_; }
  double to_double() const;

  void advance();

 private:
  void reduce(Integer& x) const;

  int bits_;
  std::int64_t m_;
  Integer v_, d_, dd_;
  Integer ev_, ed_, edd_;
};

/// Upper bound, in ulps, on the closed-form error of A m^2 + B m + C for
/// 0 <= m <= m_max.
Integer closed_form_error(const FixedReal& A, const FixedReal& B, const FixedReal& C,
                          std::int64_t m_max);

/// Throws PrecisionExhausted when walking up to m_max could exceed the
/// tolerance.
void require_walk_precision(const FixedReal& A, const FixedReal& B, const FixedReal& C,
                            std::int64_t m_max, int log2_tol, const char* what);

}  // namespace qfdense::detail
