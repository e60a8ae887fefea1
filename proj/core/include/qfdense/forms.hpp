#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qfdense/fixed_real.hpp"
#include "qfdense/int_matrix.hpp"

namespace qfdense {

/// Symmetric 3x3 matrix of rationals: Q(v) = v G v^T for row vectors v.
using Gram = std::array<std::array<Rational, 3>, 3>;

/// A nondegenerate indefinite ternary quadratic form with exact Gram data.
class TernaryForm {
 public:
  /// Throws InvalidForm unless gram is symmetric, nonsingular and indefinite.
  explicit TernaryForm(Gram gram);

  /// Q(a, b, c) = b^2 - 4ac.
  static TernaryForm standard();

  /// Six rationals "a11 a22 a33 a12 a13 a23"; off-diagonal entries are the
  /// Gram entries (bilinear-form coefficients), so Q = sum a_ii v_i^2 +
  /// 2 sum_{i<j} a_ij v_i v_j.
  static TernaryForm parse(std::string_view text);
  std::string serialize() const;

  const Gram& gram() const { return gram_; }
  Rational determinant() const;

  /// Exact value at an integer vector.
  Rational evaluate(const IntVec3& v) const;

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;

 private:
  Gram gram_;
};

/// Rational Gram helpers usable on raw (possibly degenerate) data.
bool is_symmetric(const Gram& g);
Rational evaluate_gram(const Gram& g, const IntVec3& v);

/// The shift xi = (alpha, beta, gamma).
struct ShiftVector {
  FixedReal alpha, beta, gamma;

  ShiftVector() = default;
  /// Throws InvalidInput if the components disagree on precision.
  ShiftVector(FixedReal a, FixedReal b, FixedReal c);

  int frac_bits() const { return alpha.frac_bits(); }
  const FixedReal& operator[](std::size_t i) const;
  ShiftVector with_bits(int frac_bits) const;
  static ShiftVector zero(int frac_bits = kDefaultFracBits);
};

using RealVec3 = std::array<FixedReal, 3>;

/// v G v^T with tracked error; throws PrecisionExhausted when the error
/// exceeds 2^log2_tol.
FixedReal evaluate(const TernaryForm& q, const RealVec3& v,
                   int log2_tol = kDefaultToleranceLog2);

/// Q(v + xi).
FixedReal evaluate_shifted(const TernaryForm& q, const ShiftVector& xi, const IntVec3& v,
                           int log2_tol = kDefaultToleranceLog2);

/// Lexicographically least primitive v with 0 < max|v_i| <= bound,
/// first nonzero coordinate positive and Q(v) = 0. Absence does not prove
/// anisotropy.
std::optional<IntVec3> find_isotropic_vector(const Gram& g, long bound);
std::optional<IntVec3> find_isotropic_vector(const TernaryForm& q, long bound);

/// True iff m * gram(qp) = M gram(standard) M^T, i.e. m Q'(v) = Q(vM).
bool verify_equivalence(const TernaryForm& qp, const Integer& m, const IntMatrix3& M);

}  // namespace qfdense
