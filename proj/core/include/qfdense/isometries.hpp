#pragma once

#include <string>

#include "qfdense/forms.hpp"
#include "qfdense/int_matrix.hpp"

namespace qfdense {

/// Integer 2x2 matrix [[a, b], [c, d]] with determinant 1.
class SL2Matrix {
 public:
  /// Throws InvalidInput unless ad - bc = 1.
  SL2Matrix(Integer a, Integer b, Integer c, Integer d);
  static SL2Matrix identity() { return {1, 0, 0, 1}; }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  SL2Matrix inverse() const { return {d_, -b_, -c_, a_}; }
  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;

 private:
  Integer a_, b_, c_, d_;
};

/// Integer 3x3 matrix preserving the standard form under the row-vector
/// action: M G M^T = G and det M = 1.
class SOQMatrix {
 public:
  /// Throws InvalidInput unless both invariants hold exactly.
  explicit SOQMatrix(IntMatrix3 entries);
  static SOQMatrix identity();

  const IntMatrix3& entries() const { return m_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  SOQMatrix inverse() const;
  friend SOQMatrix operator*(const SOQMatrix& x, const SOQMatrix& y);
  friend bool operator==(const SOQMatrix&, const SOQMatrix&) = default;

  /// Three rows of three integers.
  std::string to_string() const { return format(m_); }

 private:
  struct Unchecked {};
  SOQMatrix(IntMatrix3 entries, Unchecked) : m_(std::move(entries)) {}
  friend SOQMatrix iota(const SL2Matrix& g);

  IntMatrix3 m_;
};

/// The symmetric-square embedding SL2 -> SO_Q:
/// [[a^2, 2ab, b^2], [ac, ad+bc, bd], [c^2, 2cd, d^2]].
SOQMatrix iota(const SL2Matrix& g);

/// M_m = iota([[1, m], [0, 1]]) = [[1, 2m, m^2], [0, 1, m], [0, 0, 1]].
SOQMatrix unipotent(const Integer& m);

/// Row-vector action xi M. Throws PrecisionExhausted when the result's
/// error exceeds 2^log2_tol.
ShiftVector apply(const ShiftVector& xi, const SOQMatrix& M,
                  int log2_tol = kDefaultToleranceLog2);
IntVec3 apply(const IntVec3& v, const SOQMatrix& M);

/// unipotent(m1) * unipotent(m2) == unipotent(m1 + m2), exactly.
bool group_law_check(const Integer& m1, const Integer& m2);

/// An element of SL2(Z) whose first column is (a, c). Throws InvalidInput
/// unless gcd(a, c) = 1.
SL2Matrix complete_to_sl2(const Integer& a, const Integer& c);

}  // namespace qfdense
