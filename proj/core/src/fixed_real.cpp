#include "qfdense/fixed_real.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "qfdense/errors.hpp"

namespace qfdense {

namespace {

void check_bits(int bits) {
  if (bits < 1 || bits > (1 << 16)) throw InvalidInput("fractional bit count out of range");
}

Integer mag(const Integer& x) { return Integer(::abs(x)); }
Rational mag(const Rational& x) { return Rational(::abs(x)); }

// |x| / 2^k rounded up, x >= 0.
Integer shift_ceil(const Integer& x, unsigned long k) {
  Integer q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), x.get_mpz_t(), k);
  return q;
}

// Sum of (-1)^k / ((2k+1) x^(2k+1)) scaled by 2^w, truncating each step.
Integer arctan_inv(unsigned long x, unsigned long w) {
  Integer term = pow2(w) / x;
  Integer sum = term;
  const Integer x2 = Integer(x) * x;
  for (unsigned long k = 1; term != 0; ++k) {
    term /= x2;
    Integer t = term / (2 * k + 1);
    if (k % 2 == 1) {
      sum -= t;
    } else {
      sum += t;
    }
  }
  return sum;
}

}  // namespace

FixedReal::FixedReal(int frac_bits) : mant_(0), err_(0), bits_(frac_bits) { check_bits(frac_bits); }

FixedReal::FixedReal(Integer mant, Integer err, int bits, std::optional<Rational> exact)
    : mant_(std::move(mant)), err_(std::move(err)), bits_(bits), exact_(std::move(exact)) {
  check_bits(bits);
  if (err_ == 0) exact_.reset();
}

FixedReal FixedReal::from_raw(Integer mantissa, Integer error_ulps, int frac_bits) {
  if (sgn(error_ulps) < 0) throw InvalidInput("negative error radius");
  return FixedReal(std::move(mantissa), std::move(error_ulps), frac_bits, std::nullopt);
}

FixedReal FixedReal::from_integer(const Integer& v, int frac_bits) {
  check_bits(frac_bits);
  Integer m = v;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), frac_bits);
  return FixedReal(std::move(m), 0, frac_bits, std::nullopt);
}

FixedReal FixedReal::from_rational(const Rational& v, int frac_bits) {
  check_bits(frac_bits);
  Integer scaled = v.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), frac_bits);
  if (mpz_divisible_p(scaled.get_mpz_t(), v.get_den_mpz_t())) {
    Integer m;
    mpz_divexact(m.get_mpz_t(), scaled.get_mpz_t(), v.get_den_mpz_t());
    return FixedReal(std::move(m), 0, frac_bits, std::nullopt);
  }
  return FixedReal(div_round_even(scaled, v.get_den()), 1, frac_bits, v);
}

FixedReal FixedReal::from_double(double v, int frac_bits) {
  if (!std::isfinite(v)) throw InvalidInput("non-finite real");
  return from_rational(Rational(v), frac_bits);
}

FixedReal FixedReal::from_surd(const Integer& u, const Integer& v, const Integer& w,
                               const Integer& d, int frac_bits) {
  check_bits(frac_bits);
  if (w == 0) throw InvalidInput("surd denominator is zero");
  if (sgn(d) < 0) throw InvalidInput("surd radicand is negative");
  const Integer root = isqrt(d);
  if (root * root == d) return from_rational(Rational(u + v * root, w), frac_bits);

  constexpr unsigned long kGuard = 64;
  const unsigned long scale = static_cast<unsigned long>(frac_bits) + kGuard;
  Integer radicand = d;
  mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), 2 * scale);
  // S <= sqrt(d) 2^scale < S + 1.
  const Integer s = isqrt(radicand);
  Integer num = u;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), scale);
  num += v * s;
  const Integer den = w * pow2(kGuard);
  // Truncation of the root contributes |v| / (|w| 2^guard) ulps, rounding 1/2.
  Integer err = div_ceil(mag(v), mag(den)) + 1;
  return FixedReal(div_round_even(num, den), std::move(err), frac_bits, std::nullopt);
}

FixedReal FixedReal::pi(int frac_bits) {
  check_bits(frac_bits);
  constexpr unsigned long kGuard = 64;
  const unsigned long w = static_cast<unsigned long>(frac_bits) + kGuard;
  Integer scaled = 16 * arctan_inv(5, w) - 4 * arctan_inv(239, w);
  // Accumulated truncation is far below 2^guard units; 2 ulps covers it.
  return FixedReal(div_round_even(scaled, pow2(kGuard)), 2, frac_bits, std::nullopt);
}

std::optional<Rational> FixedReal::known_rational() const {
  if (exact_) return exact_;
  if (err_ == 0) {
    Rational r(mant_, pow2(static_cast<unsigned long>(bits_)));
    r.canonicalize();
    return r;
  }
  return std::nullopt;
}

double FixedReal::to_double() const {
  if (exact_) return exact_->get_d();
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, mant_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(exp) - bits_);
}

double FixedReal::error_bound() const {
  if (err_ == 0) return 0.0;
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, err_.get_mpz_t());
  return std::nextafter(std::ldexp(d, static_cast<int>(exp) - bits_),
                        std::numeric_limits<double>::infinity());
}

bool FixedReal::error_within(int log2_tol) const {
  const long k = static_cast<long>(bits_) + log2_tol;
  if (k < 0) return err_ == 0;
  return cmp(err_, pow2(static_cast<unsigned long>(k))) <= 0;
}

void FixedReal::require_error_within(int log2_tol, std::string_view what) const {
  if (!error_within(log2_tol)) {
    throw PrecisionExhausted(std::string(what) + ": tracked error ~2^" +
                             std::to_string(static_cast<long>(mpz_sizeinbase(err_.get_mpz_t(), 2)) - bits_) +
                             " exceeds tolerance 2^" + std::to_string(log2_tol) + " at " +
                             std::to_string(bits_) + " fractional bits");
  }
}

FixedReal FixedReal::with_bits(int frac_bits) const {
  check_bits(frac_bits);
  if (frac_bits == bits_) return *this;
  if (exact_) return from_rational(*exact_, frac_bits);
  if (frac_bits > bits_) {
    const auto shift = static_cast<unsigned long>(frac_bits - bits_);
    Integer m = mant_, e = err_;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), shift);
    mpz_mul_2exp(e.get_mpz_t(), e.get_mpz_t(), shift);
    return FixedReal(std::move(m), std::move(e), frac_bits, std::nullopt);
  }
  const auto shift = static_cast<unsigned long>(bits_ - frac_bits);
  if (err_ == 0) return from_rational(*known_rational(), frac_bits);
  Integer m = div_round_even(mant_, pow2(shift));
  return FixedReal(std::move(m), shift_ceil(err_, shift) + 1, frac_bits, std::nullopt);
}

FixedReal FixedReal::lower() const { return FixedReal(mant_ - err_, 0, bits_, std::nullopt); }
FixedReal FixedReal::upper() const { return FixedReal(mant_ + err_, 0, bits_, std::nullopt); }

void FixedReal::check_same_bits(const FixedReal& o) const {
  if (bits_ != o.bits_) throw InvalidInput("mixed fixed-point precisions");
}

FixedReal FixedReal::operator-() const {
  return FixedReal(-mant_, err_, bits_, exact_ ? std::optional<Rational>(-*exact_) : std::nullopt);
}

FixedReal FixedReal::abs() const {
  if (auto r = known_rational()) return from_rational(mag(*r), bits_);
  return FixedReal(mag(mant_), err_, bits_, std::nullopt);
}

FixedReal FixedReal::frac() const {
  if (auto r = known_rational()) return from_rational(*r - Rational(qfdense::floor(*r)), bits_);
  Integer m;
  mpz_fdiv_r_2exp(m.get_mpz_t(), mant_.get_mpz_t(), static_cast<unsigned long>(bits_));
  return FixedReal(std::move(m), err_, bits_, std::nullopt);
}

FixedReal FixedReal::circle_norm() const {
  if (auto r = known_rational()) {
    Rational f = *r - Rational(qfdense::floor(*r));
    if (f * 2 > 1) f = 1 - f;
    return from_rational(f, bits_);
  }
  Integer m;
  mpz_fdiv_r_2exp(m.get_mpz_t(), mant_.get_mpz_t(), static_cast<unsigned long>(bits_));
  const Integer one = pow2(static_cast<unsigned long>(bits_));
  if (cmp(2 * m, one) > 0) m = one - m;
  return FixedReal(std::move(m), err_, bits_, std::nullopt);
}

Integer FixedReal::floor() const {
  if (auto r = known_rational()) return qfdense::floor(*r);
  const auto b = static_cast<unsigned long>(bits_);
  Integer lo = mant_ - err_, hi = mant_ + err_;
  mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), b);
  mpz_fdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), b);
  if (lo != hi) throw PrecisionExhausted("floor: value indistinguishable from an integer");
  return lo;
}

Integer FixedReal::round_half_even() const {
  if (auto r = known_rational()) return round_even(*r);
  const auto b = static_cast<unsigned long>(bits_);
  const Integer half = pow2(b - 1);
  Integer lo = mant_ - err_ + half, hi = mant_ + err_ + half;
  mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), b);
  mpz_fdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), b);
  if (lo != hi) throw PrecisionExhausted("round: value indistinguishable from a half-integer");
  return lo;
}

int FixedReal::sign() const {
  if (auto r = known_rational()) return sgn(*r);
  if (cmp(mag(mant_), err_) > 0) return sgn(mant_);
  throw PrecisionExhausted("sign: value indistinguishable from zero");
}

FixedReal operator+(const FixedReal& a, const FixedReal& b) {
  a.check_same_bits(b);
  if (a.exact_ || b.exact_) {
    auto ra = a.known_rational(), rb = b.known_rational();
    if (ra && rb) return FixedReal::from_rational(*ra + *rb, a.bits_);
  }
  // Same-precision addition is exact; only the input radii accumulate.
  return FixedReal(a.mant_ + b.mant_, a.err_ + b.err_, a.bits_, std::nullopt);
}

FixedReal operator-(const FixedReal& a, const FixedReal& b) { return a + (-b); }

FixedReal operator*(const FixedReal& a, const FixedReal& b) {
  a.check_same_bits(b);
  if (a.is_exact() && b.is_exact()) {
    return FixedReal::from_rational(*a.known_rational() * *b.known_rational(), a.bits_);
  }
  const auto bits = static_cast<unsigned long>(a.bits_);
  const Integer prod = a.mant_ * b.mant_;
  Integer mant = div_round_even(prod, pow2(bits));
  const bool rounded = !mpz_divisible_2exp_p(prod.get_mpz_t(), bits);
  Integer spread = mag(a.mant_) * b.err_ + mag(b.mant_) * a.err_ + a.err_ * b.err_;
  Integer err = shift_ceil(spread, bits) + (rounded ? 1 : 0);
  return FixedReal(std::move(mant), std::move(err), a.bits_, std::nullopt);
}

FixedReal operator/(const FixedReal& a, const FixedReal& b) {
  a.check_same_bits(b);
  if (a.is_exact() && b.is_exact()) {
    const Rational rb = *b.known_rational();
    if (rb == 0) throw InvalidInput("division by exact zero");
    return FixedReal::from_rational(*a.known_rational() / rb, a.bits_);
  }
  const Integer abs_b = mag(b.mant_);
  if (cmp(abs_b, b.err_) <= 0) throw PrecisionExhausted("division by a value indistinguishable from zero");
  const auto bits = static_cast<unsigned long>(a.bits_);
  Integer num = a.mant_;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  Integer mant = div_round_even(num, b.mant_);
  Integer spread = a.err_ * abs_b + mag(a.mant_) * b.err_;
  mpz_mul_2exp(spread.get_mpz_t(), spread.get_mpz_t(), bits);
  Integer err = div_ceil(spread, abs_b * (abs_b - b.err_)) + 1;
  return FixedReal(std::move(mant), std::move(err), a.bits_, std::nullopt);
}

FixedReal operator*(const FixedReal& a, const Integer& k) {
  if (a.exact_) return FixedReal::from_rational(*a.exact_ * k, a.bits_);
  return FixedReal(a.mant_ * k, a.err_ * mag(k), a.bits_, std::nullopt);
}

FixedReal operator/(const FixedReal& a, const Integer& k) {
  if (k == 0) throw InvalidInput("division by exact zero");
  if (auto r = a.known_rational()) return FixedReal::from_rational(*r / Rational(k), a.bits_);
  Integer mant = div_round_even(a.mant_, k);
  const bool rounded = !mpz_divisible_p(a.mant_.get_mpz_t(), k.get_mpz_t());
  Integer err = div_ceil(a.err_, mag(k)) + (rounded ? 1 : 0);
  return FixedReal(std::move(mant), std::move(err), a.bits_, std::nullopt);
}

std::string FixedReal::to_decimal(int digits) const {
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled;
  if (auto r = known_rational()) {
    scaled = round_even(*r * Rational(ten_pow));
  } else {
    scaled = div_round_even(mant_ * ten_pow, pow2(static_cast<unsigned long>(bits_)));
  }
  const bool negative = sgn(scaled) < 0;
  std::string s = mag(scaled).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

std::partial_ordering certified_compare(const FixedReal& a, const FixedReal& b) {
  if (a.is_exact() && b.is_exact()) {
    const Rational ra = *a.known_rational(), rb = *b.known_rational();
    const int c = cmp(ra, rb);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  if (a.frac_bits() != b.frac_bits()) throw InvalidInput("mixed fixed-point precisions");
  const Integer diff = a.mantissa() - b.mantissa();
  const Integer spread = a.error_ulps() + b.error_ulps();
  if (cmp(mag(diff), spread) > 0) {
    return sgn(diff) < 0 ? std::partial_ordering::less : std::partial_ordering::greater;
  }
  return std::partial_ordering::unordered;
}

double log_abs(const FixedReal& x) {
  if (auto r = x.known_rational()) {
    if (*r == 0) throw InvalidInput("log of exact zero");
    const Rational m = mag(*r);
    long en = 0, ed = 0;
    const double dn = mpz_get_d_2exp(&en, m.get_num_mpz_t());
    const double dd = mpz_get_d_2exp(&ed, m.get_den_mpz_t());
    return std::log(dn) - std::log(dd) + static_cast<double>(en - ed) * std::log(2.0);
  }
  long e = 0;
  const double d = mpz_get_d_2exp(&e, x.mantissa().get_mpz_t());
  return std::log(std::abs(d)) + static_cast<double>(e - x.frac_bits()) * std::log(2.0);
}

bool certified_le(const FixedReal& a, const FixedReal& b, std::string_view what) {
  const auto c = certified_compare(a, b);
  if (c == std::partial_ordering::unordered) {
    throw PrecisionExhausted(std::string(what) + ": comparison undecidable at working precision");
  }
  return c != std::partial_ordering::greater;
}

}  // namespace qfdense
