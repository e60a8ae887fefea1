#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qfdense/errors.hpp"
#include "qfdense/solver.hpp"

using namespace qfdense;

namespace {

const FixedReal kZero(256);
const FixedReal kSqrt2 = FixedReal::sqrt(2);

FixedReal rat(long p, long q) { return FixedReal::from_rational(Rational(p, q)); }

IntVec3 iv(long a, long b, long c) { return {Integer(a), Integer(b), Integer(c)}; }

std::array<long, 3> as_longs(const IntVec3& v) { return {v[0].get_si(), v[1].get_si(), v[2].get_si()}; }

SolveParams params(std::int64_t T, double delta, double scan_c = 1.0, double bound_C = 32.0) {
  SolveParams p;
  p.T = T;
  p.delta = delta;
  p.scan_c = scan_c;
  p.bound_C = bound_C;
  return p;
}

}  // namespace

TEST_CASE("target lift") {
  const TargetLift a = target_lift(kSqrt2, kZero);
  CHECK(a.y.sign() == 0);
  CHECK(a.z.sign() == 0);
  const TargetLift b = target_lift(rat(1, 4), rat(1, 1));
  CHECK(b.y.sign() == 0);
  CHECK(*b.z.known_rational() == -1);
  const TargetLift c = target_lift(kSqrt2, kSqrt2 * Integer(-4));
  CHECK(c.z.to_double() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(target_lift(kZero, rat(1, 3)), AlphaZero);
  CHECK_THROWS_AS(target_lift(kSqrt2 - kSqrt2, rat(1, 3)), AlphaZero);
}

TEST_CASE("nearest offset") {
  const ShiftVector zero = ShiftVector::zero();
  const TargetLift origin = target_lift(rat(1, 1), kZero);
  for (long m : {1L, 5L, -3L}) {
    const Offset o = nearest_offset(zero, m, origin);
    CHECK(o.u == iv(0, 0, 0));
    CHECK(o.miss == 0.0);
  }

  // xi M_m - eta = (0, 0.4, -0.3) exactly: alpha = 1, beta = 0.4 - 2m, gamma
  // chosen so that the last coordinate is -0.3 at m = 1.
  const ShiftVector off(rat(1, 1), rat(2, 5) - rat(2, 1), rat(-3, 10) - rat(1, 1) - (rat(2, 5) - rat(2, 1)));
  const Offset o = nearest_offset(off, 1, origin);
  CHECK(o.u == iv(0, 0, 0));
  CHECK(o.miss == doctest::Approx(0.5));
  CHECK(*o.miss_sq.known_rational() == Rational(1, 4));

  const ShiftVector s2(kSqrt2, kZero, kZero);
  const TargetLift eta{kSqrt2, kZero, kZero, kZero};
  const Offset p = nearest_offset(s2, 1, eta);
  CHECK(p.u == iv(0, -3, -1));
  CHECK(p.miss == doctest::Approx(std::hypot(2 * std::sqrt(2.0) - 3, std::sqrt(2.0) - 1)));
  CHECK(p.miss == doctest::Approx(0.4484).epsilon(1e-4));

  // Exact half-integers round to even.
  const ShiftVector half(rat(1, 1), rat(1, 2) - rat(2, 1), rat(3, 2) - rat(1, 1) - (rat(1, 2) - rat(2, 1)));
  CHECK(nearest_offset(half, 1, origin).u == iv(0, 0, -2));
}

TEST_CASE("rational degenerate case") {
  const SolveReport r = find_solutions(ShiftVector::zero(), kZero, params(100, 0.1));
  REQUIRE(r.count() == 1);
  CHECK(r.solutions[0].original == iv(0, 0, 0));
  CHECK(r.solutions[0].residual.sign() == 0);
}

TEST_CASE("solutions are certified") {
  const ShiftVector xi(kSqrt2, kZero, kZero);
  const SolveReport r = find_solutions(xi, kZero, params(10000, 0.2));
  CHECK(r.count() >= 1);
  std::set<IntVec3> distinct;
  for (const Solution& s : r.solutions) {
    CHECK(s.v[0] == 0);
    CHECK(s.v == iv(0, s.u[1].get_si(), Integer(s.u[2] - s.m * s.u[1]).get_si()));
    CHECK(s.v == qfdense::apply(s.u, unipotent(-to_integer(s.m))));
    CHECK(s.original == s.v);
    CHECK(norm_sq(s.v) <= 10000L * 10000L);
    CHECK(s.torus_miss <= 0.2);
    distinct.insert(s.v);
    // MPFR re-evaluation of Q_xi(v) = (v2)^2 - 4 (v1 + sqrt 2) v3.
    const auto v = as_longs(s.v);
    const oracle::Mp val = oracle::Mp(v[1]) * oracle::Mp(v[1]) -
                           oracle::Mp(4) * (oracle::Mp(v[0]) + oracle::sqrt_of(2)) * oracle::Mp(v[2]);
    CHECK(s.value.to_double() == doctest::Approx(val.to_double()).epsilon(1e-14));
    CHECK(std::abs(val.to_double()) <= 32 * 0.2);
  }
  CHECK(distinct.size() == r.count());
  for (std::size_t i = 1; i < r.count(); ++i) CHECK(r.solutions[i - 1].m < r.solutions[i].m);
}

TEST_CASE("invariance identity Q(xi M_m + u) = Q_xi(u M_m^-1) over rationals") {
  const TernaryForm q = TernaryForm::standard();
  const ShiftVector xi(rat(3, 7), rat(-5, 11), rat(2, 13));
  for (long m = -30; m <= 30; m += 3) {
    const ShiftVector w = qfdense::apply(xi, unipotent(m));
    for (long a = -4; a <= 4; ++a) {
      for (long b = -4; b <= 4; b += 2) {
        const IntVec3 u = iv(0, a, b);
        const RealVec3 shifted{w.alpha, w.beta + FixedReal::from_int(a), w.gamma + FixedReal::from_int(b)};
        const FixedReal lhs = evaluate(q, shifted);
        const FixedReal rhs = evaluate_shifted(q, xi, qfdense::apply(u, unipotent(-m)));
        CHECK(*lhs.known_rational() == *rhs.known_rational());
      }
    }
  }
}

TEST_CASE("solver is dominated by the oracle") {
  const ShiftVector xi(kSqrt2, kZero, kZero);
  for (const FixedReal& t : {kZero, rat(1, 3)}) {
    const SolveParams p = params(30, 0.3, 2.0);
    const SolveReport r = find_solutions(xi, t, p);
    OracleOptions opts;
    opts.collect_members = true;
    const OracleResult o = count_values_bruteforce(TernaryForm::standard(), xi, t, 30, 32 * 0.3, opts);
    CHECK(r.count() >= 1);
    CHECK(o.count >= static_cast<std::int64_t>(r.count()));
    for (const Solution& s : r.solutions) {
      CHECK(std::binary_search(o.members.begin(), o.members.end(), s.original));
    }
  }
}

TEST_CASE("solver count is monotone in delta and T") {
  const ShiftVector xi(kSqrt2, FixedReal::sqrt(3), rat(1, 2));
  const FixedReal t = FixedReal::pi();
  std::size_t prev = 0;
  for (double d : {0.02, 0.05, 0.1, 0.2, 0.3, 0.45}) {
    const std::size_t n = find_solutions(xi, t, params(1000000, d)).count();
    CHECK(n >= prev);
    prev = n;
  }
  prev = 0;
  for (std::int64_t T : {100, 1000, 10000, 100000, 1000000}) {
    const std::size_t n = find_solutions(xi, t, params(T, 0.2)).count();
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("solver with a change of frame") {
  // gamma is the irrational coordinate, so the scan runs on xi M.
  const ShiftVector xi(rat(1, 3), rat(1, 5), FixedReal::sqrt(3));
  SolveParams p = params(100000, 0.25);
  p.frame = iota(complete_to_sl2(0, 1));
  const SolveReport r = find_solutions(xi, rat(2, 1), p);
  CHECK(r.count() >= 1);
  const SOQMatrix back = p.frame->inverse();
  for (const Solution& s : r.solutions) {
    CHECK(s.v[0] == 0);
    CHECK(s.original == qfdense::apply(s.v, back));
    CHECK(norm_sq(s.original) <= Integer(100000) * 100000);
    const FixedReal res = (evaluate_shifted(TernaryForm::standard(), xi, s.original) - rat(2, 1)).abs();
    CHECK(res.to_double() <= 32 * 0.25);
    CHECK(res.to_double() == doctest::Approx(s.residual.to_double()));
  }
}

TEST_CASE("solver validation and threads") {
  const ShiftVector xi(kSqrt2, kZero, kZero);
  CHECK_THROWS_AS(find_solutions(xi, kZero, params(3, 0.1)), InvalidInput);
  CHECK_THROWS_AS(find_solutions(xi, kZero, params(100, 0.5)), InvalidInput);
  CHECK_THROWS_AS(find_solutions(xi, kZero, params(100, 0.0)), InvalidInput);
  CHECK_THROWS_AS(find_solutions(xi, kZero, params(100, 0.1, 0.0)), InvalidInput);
  CHECK_THROWS_AS(find_solutions(xi, kZero, params(100, 0.1, 1.0, 0.5)), InvalidInput);
  CHECK_THROWS_AS(find_solutions(ShiftVector(kZero, kSqrt2, kZero), rat(1, 3), params(100, 0.1)), AlphaZero);

  const SolveReport a = find_solutions(xi, kZero, params(100000000, 0.158), {1});
  const SolveReport b = find_solutions(xi, kZero, params(100000000, 0.158), {5});
  REQUIRE(a.count() == b.count());
  for (std::size_t i = 0; i < a.count(); ++i) {
    CHECK(a.solutions[i].m == b.solutions[i].m);
    CHECK(a.solutions[i].original == b.solutions[i].original);
  }

  const ShiftVector coarse(FixedReal::sqrt(2, 64), FixedReal(64), FixedReal(64));
  CHECK_THROWS_AS(find_solutions(coarse, FixedReal(64), params(1000000000000, 0.2)), PrecisionExhausted);
}

TEST_CASE("brute-force oracle examples") {
  const TernaryForm q = TernaryForm::standard();
  OracleOptions opts;
  opts.collect_members = true;

  const OracleResult a = count_values_bruteforce(q, ShiftVector::zero(), kZero, 2, 0.5, opts);
  const oracle::BallCount ra = oracle::ball_count(oracle::standard_gram(), {0, 0, 0}, 0, 2, 0.5);
  CHECK(a.count == ra.count);
  CHECK(std::binary_search(a.members.begin(), a.members.end(), iv(1, 0, 0)));
  CHECK(std::binary_search(a.members.begin(), a.members.end(), iv(0, 0, -2)));
  // Q(1, 2, 1) = 0 but |(1, 2, 1)| = sqrt 6 lies outside the ball.
  CHECK_FALSE(std::binary_search(a.members.begin(), a.members.end(), iv(1, 2, 1)));
  CHECK(std::binary_search(a.members.begin(), a.members.end(), iv(-2, 0, 0)));
  CHECK(a.min_residual.sign() == 0);
  CHECK(a.argmin == iv(-2, 0, 0));

  const ShiftVector s2(kSqrt2, kZero, kZero);
  const OracleResult b = count_values_bruteforce(q, s2, kZero, 1, 0.01);
  CHECK(b.count >= 1);
  CHECK(b.min_residual.sign() == 0);

  // Saturation: delta above every residual counts every lattice point.
  const OracleResult c = count_values_bruteforce(q, s2, kZero, 5, 1000.0);
  long points = 0;
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y)
      for (long z = -5; z <= 5; ++z) points += x * x + y * y + z * z <= 25;
  CHECK(c.count == points);

  CHECK_THROWS_AS(count_values_bruteforce(q, s2, kZero, 301, 0.1), CapExceeded);
}

TEST_CASE("brute-force oracle against the MPFR scan") {
  const std::array<oracle::Mp, 3> ref_xi{oracle::sqrt_of(2), oracle::sqrt_of(3), oracle::rational(1, 2)};
  const ShiftVector xi(kSqrt2, FixedReal::sqrt(3), rat(1, 2));
  OracleOptions opts;
  opts.collect_members = true;
  for (const auto& [t, rt] : {std::pair{kZero, oracle::Mp(0)}, std::pair{FixedReal::pi(), oracle::pi()}}) {
    for (double delta : {0.05, 0.3, 2.0}) {
      const OracleResult r = count_values_bruteforce(TernaryForm::standard(), xi, t, 9, delta, opts);
      const oracle::BallCount ref = oracle::ball_count(oracle::standard_gram(), ref_xi, rt, 9, delta);
      CHECK(r.count == ref.count);
      CHECK(r.min_residual.to_double() == doctest::Approx(ref.min_residual).epsilon(1e-14));
      CHECK(as_longs(r.argmin) == ref.argmin);
      REQUIRE(r.members.size() == ref.members.size());
      for (std::size_t i = 0; i < ref.members.size(); ++i) CHECK(as_longs(r.members[i]) == ref.members[i]);
    }
  }

  // A non-standard form.
  const TernaryForm f = TernaryForm::parse("1 1 -1 0 0 1/3");
  oracle::Gram g;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g[i][j] = f.gram()[i][j];
  const OracleResult r = count_values_bruteforce(f, xi, FixedReal::pi(), 8, 0.2, opts);
  const oracle::BallCount ref = oracle::ball_count(g, ref_xi, oracle::pi(), 8, 0.2);
  CHECK(r.count == ref.count);
  CAPTURE(r.min_residual.to_double());
  CAPTURE(ref.min_residual);
  CHECK(as_longs(r.argmin) == ref.argmin);

  // Thread count does not matter.
  OracleOptions many = opts;
  many.threads = 6;
  const OracleResult r6 = count_values_bruteforce(f, xi, FixedReal::pi(), 8, 0.2, many);
  CHECK(r6.count == r.count);
  CHECK(r6.members == r.members);
  CHECK(r6.argmin == r.argmin);
}

TEST_CASE("critical exponent") {
  const auto zero_rows = estimate_critical_exponent(ShiftVector::zero(), kZero, {4, 8});
  for (const ExponentRow& row : zero_rows) {
    CHECK(row.min_residual.sign() == 0);
    CHECK_FALSE(row.omega_hat);
  }

  const ShiftVector s2(kSqrt2, kZero, kZero);
  for (const ExponentRow& row : estimate_critical_exponent(s2, kZero, {20, 40})) {
    CHECK((!row.omega_hat || *row.omega_hat >= 0.125));
  }

  const ShiftVector xi(kSqrt2, FixedReal::sqrt(3), rat(1, 2));
  const auto rows = estimate_critical_exponent(xi, FixedReal::pi(), {10, 20});
  for (const ExponentRow& row : rows) {
    REQUIRE(row.omega_hat);
    CHECK(*row.omega_hat > 0);
    CHECK(std::isfinite(*row.omega_hat));
    CHECK(*row.omega_hat == doctest::Approx(-std::log(row.min_residual.to_double()) / std::log(double(row.T))));
  }
  // The minimum over a larger ball can only shrink.
  CHECK(certified_le(rows[1].min_residual, rows[0].min_residual, "test"));

  ExponentParams sp;
  sp.mode = ExponentMode::solver;
  const auto srows = estimate_critical_exponent(s2, kZero, {100, 10000, 1000000}, sp);
  for (const ExponentRow& row : srows) {
    REQUIRE(row.omega_hat);
    CHECK(*row.omega_hat > 0);
  }

  CHECK_THROWS_AS(estimate_critical_exponent(s2, kZero, {40, 20}), InvalidInput);
  CHECK_THROWS_AS(estimate_critical_exponent(s2, kZero, {20, 20}), InvalidInput);
  CHECK_THROWS_AS(estimate_critical_exponent(s2, kZero, {}), InvalidInput);
  CHECK_THROWS_AS(estimate_critical_exponent(s2, kZero, {400}), CapExceeded);
}
