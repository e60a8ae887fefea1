#include "qfdense/int_matrix.hpp"

namespace qfdense {

IntMatrix3 identity3() {
  IntMatrix3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  }
  return m;
}

IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b) {
  IntMatrix3 c;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    }
  }
  return c;
}

IntMatrix3 transpose(const IntMatrix3& a) {
  IntMatrix3 t;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = a[j][i];
  }
  return t;
}

Integer determinant(const IntMatrix3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

IntMatrix3 adjugate(const IntMatrix3& a) {
  IntMatrix3 adj;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // Cofactor of a[j][i].
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    }
  }
  return adj;
}

IntVec3 row_times(const IntVec3& v, const IntMatrix3& m) {
  IntVec3 out;
  for (std::size_t j = 0; j < 3; ++j) out[j] = v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j];
  return out;
}

Integer norm_sq(const IntVec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

std::string format(const IntVec3& v) {
  return "[" + v[0].get_str() + ", " + v[1].get_str() + ", " + v[2].get_str() + "]";
}

std::string format(const IntMatrix3& m) {
  std::string out;
  for (const auto& row : m) {
    out += row[0].get_str() + " " + row[1].get_str() + " " + row[2].get_str() + "\n";
  }
  return out;
}

}  // namespace qfdense
