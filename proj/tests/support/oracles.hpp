#pragma once

// Reference implementations used to check the library. They share no code
// with it: reals go through MPFR, matrices through __int128, continued
// fractions of surds through the exact PQa recurrence.

#include <gmpxx.h>
#include <mpfr.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

inline constexpr mpfr_prec_t kPrec = 1024;

/// RAII MPFR value at kPrec bits.
class Mp {
 public:
  Mp() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  Mp(long x) : Mp() { mpfr_set_si(v_, x, MPFR_RNDN); }
  Mp(const Mp& o) : Mp() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Mp operator+(const Mp& a, const Mp& b);
  friend Mp operator-(const Mp& a, const Mp& b);
  friend Mp operator*(const Mp& a, const Mp& b);
  friend Mp operator/(const Mp& a, const Mp& b);

 private:
  mpfr_t v_;
};

Mp rational(long p, long q);
Mp sqrt_of(long d);
/// (u + v sqrt(d)) / w.
Mp surd(long u, long v, long w, long d);
Mp pi();
Mp from_double(double x);
/// x - floor(x).
Mp frac(const Mp& x);
/// Distance to the nearest integer.
Mp circle_norm(const Mp& x);
Mp abs(const Mp& x);

/// (2 a m + b, a m^2 + b m + g) mod 1.
std::array<double, 2> phi(const Mp& a, const Mp& b, const Mp& g, long m);

/// #{1 <= m <= T : torus distance from phi(m) to (x0, y0) <= delta}.
long orbit_count(const Mp& a, const Mp& b, const Mp& g, const Mp& x0, const Mp& y0, long T,
                 double delta);

/// |sum_{m=1}^T e(n a m^2 + b m)|^2.
double weyl_abs_sq(long n, const Mp& a, const Mp& b, long T);

/// sum_{m=1}^{count} min(1 / ||m step||, cap).
double sum_min_linear(const Mp& step, long count, double cap);

/// Partial quotients of (u + v sqrt(d)) / w, v, w > 0 and d not a square.
std::vector<mpz_class> surd_cf(long u, long v, long w, long d, std::size_t n);

struct Fraction {
  mpz_class p, q;
};
std::vector<Fraction> convergents_of(const std::vector<mpz_class>& terms);

using Mat3 = std::array<std::array<__int128, 3>, 3>;
using Vec3 = std::array<__int128, 3>;

Mat3 iota(long a, long b, long c, long d);
Mat3 mul(const Mat3& x, const Mat3& y);
Vec3 row_times(const Vec3& v, const Mat3& m);
/// b^2 - 4ac.
__int128 q_standard(const Vec3& v);

/// Rational Gram matrix as p/q pairs.
using Gram = std::array<std::array<mpq_class, 3>, 3>;

struct BallCount {
  long count = 0;
  double min_residual = 0.0;
  std::array<long, 3> argmin{};
  std::vector<std::array<long, 3>> members;
};

/// Exhaustive |v| <= T scan, reversed loop order, MPFR evaluation.
BallCount ball_count(const Gram& g, const std::array<Mp, 3>& xi, const Mp& t, long T,
                     double delta);

Gram standard_gram();

}  // namespace oracle
