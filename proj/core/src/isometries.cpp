#include "qfdense/isometries.hpp"

#include "qfdense/errors.hpp"

namespace qfdense {

namespace {

// Standard Gram scaled by -1; the invariance test is unchanged.
bool preserves_standard_form(const IntMatrix3& m) {
  IntMatrix3 g{};
  for (auto& row : g) row.fill(0);
  g[0][2] = 2;
  g[2][0] = 2;
  g[1][1] = -1;
  return multiply(multiply(m, g), transpose(m)) == g;
}

}  // namespace

SL2Matrix::SL2Matrix(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1) throw InvalidInput("SL2 matrix must have determinant 1");
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

SOQMatrix::SOQMatrix(IntMatrix3 entries) : m_(std::move(entries)) {
  if (determinant(m_) != 1) throw InvalidInput("SO_Q matrix must have determinant 1");
  if (!preserves_standard_form(m_)) throw InvalidInput("matrix does not preserve the standard form");
}

SOQMatrix SOQMatrix::identity() { return SOQMatrix(identity3(), Unchecked{}); }

SOQMatrix SOQMatrix::inverse() const { return SOQMatrix(adjugate(m_), Unchecked{}); }

SOQMatrix operator*(const SOQMatrix& x, const SOQMatrix& y) {
  return SOQMatrix(multiply(x.m_, y.m_), SOQMatrix::Unchecked{});
}

SOQMatrix iota(const SL2Matrix& g) {
  const Integer &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  IntMatrix3 m{{{a * a, 2 * a * b, b * b},
                {a * c, a * d + b * c, b * d},
                {c * c, 2 * c * d, d * d}}};
  return SOQMatrix(std::move(m), SOQMatrix::Unchecked{});
}

SOQMatrix unipotent(const Integer& m) { return iota(SL2Matrix(1, m, 0, 1)); }

ShiftVector apply(const ShiftVector& xi, const SOQMatrix& M, int log2_tol) {
  const int bits = xi.frac_bits();
  FixedReal out[3] = {FixedReal(bits), FixedReal(bits), FixedReal(bits)};
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (M(i, j) != 0) out[j] += xi[i] * M(i, j);
    }
    out[j].require_error_within(log2_tol, "isometry action");
  }
  return {out[0], out[1], out[2]};
}

IntVec3 apply(const IntVec3& v, const SOQMatrix& M) { return row_times(v, M.entries()); }

bool group_law_check(const Integer& m1, const Integer& m2) {
  return unipotent(m1) * unipotent(m2) == unipotent(m1 + m2);
}

SL2Matrix complete_to_sl2(const Integer& a, const Integer& c) {
  const ExtendedGcd e = extended_gcd(a, c);
  if (e.g != 1) throw InvalidInput("direction (a, c) must be coprime");
  // a*x + c*y = 1  =>  [[a, -y], [c, x]] has determinant 1.
  return {a, -e.y, c, e.x};
}

}  // namespace qfdense
