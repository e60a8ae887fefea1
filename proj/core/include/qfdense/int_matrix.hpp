#pragma once

#include <array>
#include <string>

#include "qfdense/numeric.hpp"

namespace qfdense {

using IntVec3 = std::array<Integer, 3>;
using IntMatrix3 = std::array<IntVec3, 3>;

IntMatrix3 identity3();
IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b);
IntMatrix3 transpose(const IntMatrix3& a);
Integer determinant(const IntMatrix3& a);
/// Adjugate; equals the inverse when det = 1.
IntMatrix3 adjugate(const IntMatrix3& a);
/// Row vector times matrix: (v M)_j = sum_i v_i M_ij.
IntVec3 row_times(const IntVec3& v, const IntMatrix3& m);

/// Squared Euclidean norm.
Integer norm_sq(const IntVec3& v);

/// "[a, b, c]".
std::string format(const IntVec3& v);
/// Three rows of three integers, one row per line.
std::string format(const IntMatrix3& m);

}  // namespace qfdense
