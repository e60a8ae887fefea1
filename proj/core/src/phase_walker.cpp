#include "phase_walker.hpp"

#include <cmath>
#include <string>

#include "qfdense/errors.hpp"

namespace qfdense::detail {

PhaseWalker::PhaseWalker(const FixedReal& A, const FixedReal& B, const FixedReal& C,
                         std::int64_t m0)
    : bits_(A.frac_bits()), m_(m0) {
  const Integer m = to_integer(m0);
  const FixedReal v = (A * Integer(m * m) + B * m + C).frac();
  const FixedReal d = (A * Integer(2 * m + 1) + B).frac();
  const FixedReal dd = (A * Integer(2)).frac();
  v_ = v.mantissa();
  d_ = d.mantissa();
  dd_ = dd.mantissa();
  ev_ = v.error_ulps();
  ed_ = d.error_ulps();
  edd_ = dd.error_ulps();
  reduce(v_);
  reduce(d_);
  reduce(dd_);
}

void PhaseWalker::reduce(Integer& x) const {
  mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(bits_));
}

void PhaseWalker::advance() {
  v_ += d_;
  ev_ += ed_;
  d_ += dd_;
  ed_ += edd_;
  reduce(v_);
  reduce(d_);
  ++m_;
}

double PhaseWalker::to_double() const {
  long e = 0;
  const double d = mpz_get_d_2exp(&e, v_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(e) - bits_);
}

Integer closed_form_error(const FixedReal& A, const FixedReal& B, const FixedReal& C,
                          std::int64_t m_max) {
  const Integer m = to_integer(m_max);
  return A.error_ulps() * m * m + B.error_ulps() * m + C.error_ulps();
}

void require_walk_precision(const FixedReal& A, const FixedReal& B, const FixedReal& C,
                            std::int64_t m_max, int log2_tol, const char* what) {
  // Factor 4 covers the walker's accumulation and the closed-form restarts.
  const Integer bound = 4 * closed_form_error(A, B, C, m_max) + 4;
  const FixedReal probe = FixedReal::from_raw(0, bound, A.frac_bits());
  if (!probe.error_within(log2_tol)) {
    throw PrecisionExhausted(std::string(what) + ": error bound " + std::to_string(probe.error_bound()) +
                             " at index " + std::to_string(m_max) + " exceeds tolerance 2^" +
                             std::to_string(log2_tol));
  }
}

}  // namespace qfdense::detail
