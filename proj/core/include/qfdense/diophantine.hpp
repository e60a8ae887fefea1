#pragma once

#include <optional>
#include <vector>

#include "qfdense/errors.hpp"
#include "qfdense/fixed_real.hpp"
#include "qfdense/forms.hpp"

namespace qfdense {

/// Partial quotients [a0; a1, a2, ...].
struct ContinuedFraction {
  std::vector<Integer> terms;
  /// The expansion is complete: the input is rational.
  bool terminated = false;
};

/// Thrown when a requested partial quotient cannot be certified; carries
/// the certified prefix.
class ContinuedFractionExhausted : public PrecisionExhausted {
 public:
  ContinuedFractionExhausted(const std::string& what, ContinuedFraction prefix)
      : PrecisionExhausted(what), prefix_(std::move(prefix)) {}
  const ContinuedFraction& prefix() const { return prefix_; }

 private:
  ContinuedFraction prefix_;
};

/// Incremental continued-fraction expansion of a FixedReal.
///
/// Exact rationals are expanded by Euclid's algorithm. Otherwise both ends
/// of the tracked interval are expanded in lockstep and a quotient is
/// released only when the two agree, neither expansion has ended, and the
/// new denominator q_k satisfies 4 q_k^2 err <= 1.
class ContinuedFractionExpander {
 public:
  explicit ContinuedFractionExpander(const FixedReal& alpha);

  /// Next partial quotient, or nullopt once a rational expansion ended.
  /// Throws ContinuedFractionExhausted if the next term is not certified.
  std::optional<Integer> next();

  const ContinuedFraction& expansion() const { return cf_; }
  /// Numerator and denominator of the latest convergent.
  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }

 private:
  struct Euclid {
    Integer num, den;
  };

  FixedReal alpha_;
  bool exact_ = false;
  Euclid lo_, hi_;
  Integer err_;
  ContinuedFraction cf_;
  Integer p_ = 1, q_ = 0, p_prev_ = 0, q_prev_ = 1;
};

/// The first n_terms partial quotients (fewer if the input is a rational
/// with a shorter expansion).
ContinuedFraction continued_fraction(const FixedReal& alpha, std::size_t n_terms);

struct Convergent {
  Integer p, q;
  /// |q alpha - p|
  FixedReal dist;
};

/// Convergents p_k/q_k of `cf` with their certified distances to alpha.
std::vector<Convergent> convergents(const ContinuedFraction& cf, const FixedReal& alpha);

/// The convergent with the largest q <= T; it satisfies |alpha - p/q| <= 1/(Tq).
Convergent dirichlet_approx(const FixedReal& alpha, const Integer& T);

struct DiophantineEstimate {
  struct Local {
    Integer q;
    /// -log(dist_k) / log(q_k)
    double kappa;
  };

  double kappa_hat = 1.0;
  double c_hat = 0.0;
  Integer q_max;
  std::vector<Local> per_convergent;
  std::vector<Convergent> convergents;
};

/// Finite-range exponent estimate from the convergents with q_k <= q_max.
///
/// kappa_hat is the least-squares slope of -log(dist_k) against log(q_k)
/// over q_k >= 2, clipped below at 1; c_hat is the largest constant with
/// dist_k >= c_hat / q_k^kappa_hat for every convergent in range. Throws
/// RationalDetected for rational input.
DiophantineEstimate estimate_kappa(const FixedReal& alpha, const Integer& q_max);

struct DirectionChoice {
  Integer a, c;
  /// alpha a^2 + beta a c + gamma c^2
  FixedReal alpha_tilde;
  DiophantineEstimate estimate;
};

/// alpha a^2 + beta a c + gamma c^2
FixedReal directional_coefficient(const ShiftVector& xi, const Integer& a, const Integer& c);

/// Estimate for a single user-supplied coprime direction.
DirectionChoice evaluate_direction(const ShiftVector& xi, const Integer& a, const Integer& c,
                                   const Integer& q_max);

/// Scans coprime (a, c), |a|, |c| <= bound, first nonzero entry positive,
/// and returns the one with the smallest kappa_hat (ties: smaller |a|+|c|,
/// then lexicographic). Throws AllRational if every candidate is rational.
DirectionChoice diophantine_direction(const ShiftVector& xi, long bound, const Integer& q_max,
                                      int threads = 1);

}  // namespace qfdense
