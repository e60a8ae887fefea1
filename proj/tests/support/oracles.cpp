#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Mp operator+(const Mp& a, const Mp& b) { Mp r; mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Mp operator-(const Mp& a, const Mp& b) { Mp r; mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Mp operator*(const Mp& a, const Mp& b) { Mp r; mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Mp operator/(const Mp& a, const Mp& b) { Mp r; mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }

Mp rational(long p, long q) { return Mp(p) / Mp(q); }

Mp sqrt_of(long d) {
  Mp r;
  mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(d), MPFR_RNDN);
  return r;
}

Mp surd(long u, long v, long w, long d) { return (Mp(u) + Mp(v) * sqrt_of(d)) / Mp(w); }

Mp pi() {
  Mp r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Mp from_double(double x) {
  Mp r;
  mpfr_set_d(r.get(), x, MPFR_RNDN);
  return r;
}

Mp frac(const Mp& x) {
  Mp f;
  mpfr_floor(f.get(), x.get());
  return x - f;
}

Mp circle_norm(const Mp& x) {
  Mp f = frac(x);
  Mp g = Mp(1) - f;
  return mpfr_cmp(f.get(), g.get()) <= 0 ? f : g;
}

Mp abs(const Mp& x) {
  Mp r;
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

std::array<double, 2> phi(const Mp& a, const Mp& b, const Mp& g, long m) {
  const Mp mm(m);
  return {frac(Mp(2) * a * mm + b).to_double(), frac(a * mm * mm + b * mm + g).to_double()};
}

long orbit_count(const Mp& a, const Mp& b, const Mp& g, const Mp& x0, const Mp& y0, long T,
                 double delta) {
  long count = 0;
  const Mp d2 = from_double(delta) * from_double(delta);
  for (long m = 1; m <= T; ++m) {
    const Mp mm(m);
    const Mp dx = circle_norm(Mp(2) * a * mm + b - x0);
    const Mp dy = circle_norm(a * mm * mm + b * mm + g - y0);
    if (mpfr_cmp((dx * dx + dy * dy).get(), d2.get()) <= 0) ++count;
  }
  return count;
}

double weyl_abs_sq(long n, const Mp& a, const Mp& b, long T) {
  Mp re(0), im(0), s, c, theta;
  const Mp two_pi = Mp(2) * pi();
  for (long m = 1; m <= T; ++m) {
    const Mp mm(m);
    theta = two_pi * frac(Mp(n) * a * mm * mm + b * mm);
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    re = re + c;
    im = im + s;
  }
  return (re * re + im * im).to_double();
}

double sum_min_linear(const Mp& step, long count, double cap) {
  long double total = 0;
  for (long m = 1; m <= count; ++m) {
    const double d = circle_norm(step * Mp(m)).to_double();
    total += (d * cap > 1.0) ? 1.0 / d : cap;
  }
  return static_cast<double>(total);
}

namespace {

mpz_class floor_div(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

}  // namespace

std::vector<mpz_class> surd_cf(long u, long v, long w, long d, std::size_t n) {
  // x = (P + sqrt(D)) / Q with Q | D - P^2.
  mpz_class P = mpz_class(u) * w, D = mpz_class(v) * v * d * w * w, Q = mpz_class(w) * w;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), D.get_mpz_t());
  std::vector<mpz_class> out;
  for (std::size_t k = 0; k < n; ++k) {
    // floor((P + sqrt D) / Q) with sqrt D irrational.
    const mpz_class a = Q > 0 ? floor_div(P + r, Q) : floor_div(-P - r - 1, -Q);
    out.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return out;
}

std::vector<Fraction> convergents_of(const std::vector<mpz_class>& terms) {
  std::vector<Fraction> out;
  mpz_class p0 = 1, q0 = 0, p1 = terms.at(0), q1 = 1;
  out.push_back({p1, q1});
  for (std::size_t k = 1; k < terms.size(); ++k) {
    mpz_class p2 = terms[k] * p1 + p0, q2 = terms[k] * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    out.push_back({p1, q1});
  }
  return out;
}

Mat3 iota(long a, long b, long c, long d) {
  const __int128 A = a, B = b, C = c, D = d;
  return {{{A * A, 2 * A * B, B * B}, {A * C, A * D + B * C, B * D}, {C * C, 2 * C * D, D * D}}};
}

Mat3 mul(const Mat3& x, const Mat3& y) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

Vec3 row_times(const Vec3& v, const Mat3& m) {
  Vec3 r{};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) r[j] += v[i] * m[i][j];
  return r;
}

__int128 q_standard(const Vec3& v) { return v[1] * v[1] - 4 * v[0] * v[2]; }

Gram standard_gram() {
  Gram g;
  for (auto& row : g)
    for (auto& x : row) x = 0;
  g[0][2] = g[2][0] = -2;
  g[1][1] = 1;
  return g;
}

BallCount ball_count(const Gram& g, const std::array<Mp, 3>& xi, const Mp& t, long T,
                     double delta) {
  BallCount out;
  Mp gm[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mpfr_set_q(gm[i][j].get(), g[i][j].get_mpq_t(), MPFR_RNDN);
  const Mp dlt = from_double(delta);
  bool have = false;
  Mp best;
  for (long v3 = T; v3 >= -T; --v3) {
    for (long v2 = T; v2 >= -T; --v2) {
      for (long v1 = T; v1 >= -T; --v1) {
        if (v1 * v1 + v2 * v2 + v3 * v3 > T * T) continue;
        const Mp x[3] = {Mp(v1) + xi[0], Mp(v2) + xi[1], Mp(v3) + xi[2]};
        Mp q(0);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) q = q + gm[i][j] * x[i] * x[j];
        const Mp r = abs(q - t);
        if (mpfr_cmp(r.get(), dlt.get()) <= 0) {
          ++out.count;
          out.members.push_back({v1, v2, v3});
        }
        const std::array<long, 3> v{v1, v2, v3};
        // Reversed visiting order: ties must move toward the least v.
        const int c = have ? mpfr_cmp(r.get(), best.get()) : -1;
        if (c < 0 || (c == 0 && v < out.argmin)) {
          best = r;
          out.argmin = v;
          have = true;
        }
      }
    }
  }
  out.min_residual = best.to_double();
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace oracle
