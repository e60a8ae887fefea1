#include "qfdense/numeric.hpp"

#include <stdexcept>

namespace qfdense {

Integer pow2(unsigned long k) {
  Integer r;
  mpz_setbit(r.get_mpz_t(), k);
  return r;
}

Integer isqrt(const Integer& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer div_round_even(const Integer& n, const Integer& d) {
  if (sgn(d) == 0) throw std::domain_error("division by zero");
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  // n = q*d + r with r in [0, d) (or (d, 0] for negative d); compare 2|r| with |d|.
  Integer twice = 2 * abs(r);
  int c = cmp(twice, abs(d));
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) {
    // fdiv rounds toward -inf; the remainder shares d's sign.
    q += 1;
  }
  return q;
}

Integer div_ceil(const Integer& n, const Integer& d) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer round_even(const Rational& r) {
  return div_round_even(r.get_num(), r.get_den());
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd out;
  mpz_gcdext(out.g.get_mpz_t(), out.x.get_mpz_t(), out.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return out;
}

}  // namespace qfdense
