#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qfdense/errors.hpp"
#include "qfdense/fixed_real.hpp"
#include "qfdense/literal.hpp"
#include "qfdense/numeric.hpp"

using namespace qfdense;

namespace {

// |x - ref| <= tracked error + 2^-(F+1) slack for the oracle itself.
bool encloses(const FixedReal& x, const oracle::Mp& ref) {
  oracle::Mp lo, hi;
  const auto bits = static_cast<long>(x.frac_bits());
  mpfr_set_z(lo.get(), Integer(x.mantissa() - x.error_ulps()).get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(hi.get(), Integer(x.mantissa() + x.error_ulps()).get_mpz_t(), MPFR_RNDN);
  mpfr_div_2si(lo.get(), lo.get(), bits, MPFR_RNDN);
  mpfr_div_2si(hi.get(), hi.get(), bits, MPFR_RNDN);
  return mpfr_cmp(lo.get(), ref.get()) <= 0 && mpfr_cmp(ref.get(), hi.get()) <= 0;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(pow2(10) == 1024);
  CHECK(isqrt(Integer(99)) == 9);
  CHECK(isqrt(Integer(100)) == 10);
  CHECK(div_round_even(5, 2) == 2);
  CHECK(div_round_even(7, 2) == 4);
  CHECK(div_round_even(-5, 2) == -2);
  CHECK(div_ceil(7, 2) == 4);
  CHECK(round_even(Rational(5, 2)) == 2);
  CHECK(round_even(Rational(-3, 2)) == -2);
  CHECK(floor(Rational(-1, 3)) == -1);
  const ExtendedGcd e = extended_gcd(240, 46);
  CHECK(e.g == 2);
  CHECK(240 * e.x + 46 * e.y == 2);
}

TEST_CASE("rational inputs stay exact") {
  const FixedReal third = FixedReal::from_rational(Rational(1, 3));
  REQUIRE(third.known_rational());
  CHECK(*third.known_rational() == Rational(1, 3));
  const FixedReal sum = third + third + third;
  REQUIRE(sum.known_rational());
  CHECK(*sum.known_rational() == 1);
  CHECK((third * Integer(3)).round_half_even() == 1);
  CHECK(FixedReal::from_rational(Rational(1, 2)).round_half_even() == 0);
  CHECK(FixedReal::from_rational(Rational(3, 2)).round_half_even() == 2);
  CHECK(FixedReal::from_double(0.1).known_rational() == Rational(0.1));
}

TEST_CASE("surds and pi enclose the MPFR reference") {
  for (int bits : {64, 128, 256, 512}) {
    CHECK(encloses(FixedReal::sqrt(2, bits), oracle::sqrt_of(2)));
    CHECK(encloses(FixedReal::sqrt(3, bits), oracle::sqrt_of(3)));
    CHECK(encloses(FixedReal::from_surd(1, 1, 2, 5, bits), oracle::surd(1, 1, 2, 5)));
    CHECK(encloses(FixedReal::from_surd(-7, -3, 11, 13, bits), oracle::surd(-7, -3, 11, 13)));
    CHECK(encloses(FixedReal::pi(bits), oracle::pi()));
  }
}

TEST_CASE("arithmetic keeps enclosures") {
  const FixedReal a = FixedReal::sqrt(2), b = FixedReal::pi(), c = FixedReal::from_rational(Rational(-7, 3));
  const oracle::Mp ra = oracle::sqrt_of(2), rb = oracle::pi(), rc = oracle::rational(-7, 3);
  CHECK(encloses(a + b, ra + rb));
  CHECK(encloses(a - c, ra - rc));
  CHECK(encloses(a * b, ra * rb));
  CHECK(encloses(a * c, ra * rc));
  CHECK(encloses(b / a, rb / ra));
  CHECK(encloses(c / b, rc / rb));
  CHECK(encloses(a * Integer(1000003), ra * oracle::Mp(1000003)));
  CHECK(encloses(b / Integer(-17), rb / oracle::Mp(-17)));
  FixedReal x = a;
  oracle::Mp rx = ra;
  for (int i = 0; i < 50; ++i) {
    x = x * a + b;
    rx = rx * ra + rb;
  }
  CHECK(encloses(x, rx));
}

TEST_CASE("frac, circle norm and rounding") {
  const FixedReal s = FixedReal::sqrt(2);
  CHECK(std::abs(s.frac().to_double() - 0.41421356237309503) < 1e-15);
  CHECK(std::abs((-s).frac().to_double() - 0.58578643762690497) < 1e-15);
  CHECK(std::abs((s * Integer(2)).circle_norm().to_double() - 0.17157287525380993) < 1e-15);
  CHECK(FixedReal::from_rational(Rational(1, 2)).circle_norm().known_rational() == Rational(1, 2));
  CHECK(s.floor() == 1);
  CHECK((-s).floor() == -2);
  CHECK((s * Integer(2)).round_half_even() == 3);
  CHECK(s.sign() == 1);
  CHECK(FixedReal(256).sign() == 0);
}

TEST_CASE("undecidable questions raise precision-exhausted") {
  // sqrt(2) - sqrt(2) has a nonzero radius around 0.
  const FixedReal z = FixedReal::sqrt(2) - FixedReal::sqrt(2);
  CHECK_THROWS_AS(z.sign(), PrecisionExhausted);
  CHECK_THROWS_AS(z.floor(), PrecisionExhausted);
  CHECK(certified_compare(z, FixedReal(256)) == std::partial_ordering::unordered);
  CHECK_THROWS_AS(certified_le(z, FixedReal(256), "test"), PrecisionExhausted);
  const FixedReal wide = FixedReal::from_raw(0, pow2(256 - 20), 256);
  CHECK_FALSE(wide.error_within(-40));
  CHECK_THROWS_AS(wide.require_error_within(-40, "test"), PrecisionExhausted);
}

TEST_CASE("certified comparison") {
  const FixedReal a = FixedReal::sqrt(2), b = FixedReal::from_rational(Rational(140, 99));
  CHECK(certified_compare(a, b) == std::partial_ordering::greater);
  CHECK(certified_compare(b, a) == std::partial_ordering::less);
  CHECK(certified_compare(b, b) == std::partial_ordering::equivalent);
  CHECK(certified_le(b, a, "test"));
}

TEST_CASE("with_bits widens and narrows") {
  const FixedReal a = FixedReal::sqrt(2, 128);
  CHECK(encloses(a.with_bits(512), oracle::sqrt_of(2)));
  CHECK(encloses(a.with_bits(64), oracle::sqrt_of(2)));
  CHECK_THROWS_AS(a + FixedReal::sqrt(2, 256), InvalidInput);
}

TEST_CASE("decimal rendering") {
  CHECK(FixedReal::sqrt(2).to_decimal(10) == "1.4142135624");
  CHECK(FixedReal::from_rational(Rational(-1, 8)).to_decimal(3) == "-0.125");
  CHECK(FixedReal::pi().to_decimal(6) == "3.141593");
}

TEST_CASE("literal grammar") {
  CHECK(parse_real_literal("3/4").is_rational());
  CHECK(*parse_real("3/4").known_rational() == Rational(3, 4));
  CHECK(*parse_real("-5").known_rational() == -5);
  CHECK(std::abs(parse_real("sqrt:2").to_double() - std::sqrt(2.0)) < 1e-15);
  CHECK_FALSE(parse_real_literal("sqrt:2").is_rational());
  CHECK(parse_real_literal("sqrt:9").is_rational());
  CHECK(*parse_real("sqrt:9").known_rational() == 3);
  CHECK(std::abs(parse_real("surd:1,1,2,5").to_double() - 1.6180339887498949) < 1e-15);
  CHECK(*parse_real("surd:1,1,2,4").known_rational() == Rational(3, 2));
  const RealLiteral d = parse_real_literal("dec:-0.125");
  CHECK(d.is_rational());
  CHECK(d.rational == Rational(-1, 8));
  CHECK(d.decimal_tolerance == Rational(1, 2000));
  CHECK(std::abs(parse_real("pi").to_double() - 3.141592653589793) < 1e-15);
  for (const char* bad : {"", "1/0", "sqrt:", "sqrt:-2", "surd:1,2,0,5", "surd:1,2,3", "dec:1.",
                          "dec:.5", "abc", "1/-2", "1.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_real_literal(bad), InvalidInput);
  }
}
