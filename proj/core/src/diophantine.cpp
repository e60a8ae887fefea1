#include "qfdense/diophantine.hpp"

#include <cmath>
#include <limits>

#include "qfdense/parallel.hpp"

namespace qfdense {

namespace {

std::string prefix_text(const ContinuedFraction& cf) {
  std::string s = "[";
  for (std::size_t i = 0; i < cf.terms.size(); ++i) {
    s += cf.terms[i].get_str();
    s += i == 0 ? ";" : ",";
  }
  if (!cf.terms.empty()) s.pop_back();
  return s + "]";
}

Convergent make_convergent(const Integer& p, const Integer& q, const FixedReal& alpha) {
  const int bits = alpha.frac_bits();
  FixedReal dist = (alpha * q - FixedReal::from_integer(p, bits)).abs();
  return {p, q, std::move(dist)};
}

}  // namespace

ContinuedFractionExpander::ContinuedFractionExpander(const FixedReal& alpha) : alpha_(alpha) {
  if (auto r = alpha.known_rational()) {
    exact_ = true;
    lo_ = {r->get_num(), r->get_den()};
    return;
  }
  const Integer one = pow2(static_cast<unsigned long>(alpha.frac_bits()));
  lo_ = {alpha.mantissa() - alpha.error_ulps(), one};
  hi_ = {alpha.mantissa() + alpha.error_ulps(), one};
  err_ = alpha.error_ulps();
}

std::optional<Integer> ContinuedFractionExpander::next() {
  if (cf_.terminated) return std::nullopt;

  auto step = [](const Euclid& e, Integer& quotient) {
    Integer rem;
    mpz_fdiv_qr(quotient.get_mpz_t(), rem.get_mpz_t(), e.num.get_mpz_t(), e.den.get_mpz_t());
    return Euclid{e.den, rem};
  };
  auto exhausted = [&](const char* why) {
    return ContinuedFractionExhausted(std::string("continued fraction: ") + why +
                                          " after certified prefix " + prefix_text(cf_),
                                      cf_);
  };

  Integer a;
  Euclid lo_next, hi_next;
  if (exact_) {
    if (lo_.den == 0) {
      cf_.terminated = true;
      return std::nullopt;
    }
    lo_next = step(lo_, a);
  } else {
    if (lo_.den == 0 || hi_.den == 0) throw exhausted("interval endpoint expansion ended");
    Integer a_hi;
    lo_next = step(lo_, a);
    hi_next = step(hi_, a_hi);
    if (a != a_hi) throw exhausted("interval endpoints disagree");
  }

  const Integer q_new = a * q_ + q_prev_;
  if (!exact_) {
    // 4 q^2 err <= 2^F, i.e. q^2 times the error radius at most 1/4.
    Integer lhs = 4 * q_new * q_new * err_;
    if (cmp(lhs, pow2(static_cast<unsigned long>(alpha_.frac_bits()))) > 0) {
      throw exhausted("precision guard q^2 * err <= 1/4 reached");
    }
  }
  const Integer p_new = a * p_ + p_prev_;
  p_prev_ = p_;
  q_prev_ = q_;
  p_ = p_new;
  q_ = q_new;
  lo_ = std::move(lo_next);
  if (!exact_) hi_ = std::move(hi_next);
  cf_.terms.push_back(a);
  return a;
}

ContinuedFraction continued_fraction(const FixedReal& alpha, std::size_t n_terms) {
  ContinuedFractionExpander ex(alpha);
  for (std::size_t i = 0; i < n_terms; ++i) {
    if (!ex.next()) break;
  }
  return ex.expansion();
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, const FixedReal& alpha) {
  std::vector<Convergent> out;
  out.reserve(cf.terms.size());
  Integer p_prev = 0, q_prev = 1, p = 1, q = 0;
  for (const Integer& a : cf.terms) {
    Integer p_new = a * p + p_prev, q_new = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_new;
    q = q_new;
    out.push_back(make_convergent(p, q, alpha));
  }
  return out;
}

Convergent dirichlet_approx(const FixedReal& alpha, const Integer& T) {
  if (T < 1) throw InvalidInput("dirichlet_approx needs T >= 1");
  ContinuedFractionExpander ex(alpha);
  ex.next();
  Integer p = ex.p(), q = ex.q();
  while (true) {
    if (!ex.next()) break;
    if (ex.q() > T) break;
    p = ex.p();
    q = ex.q();
  }
  return make_convergent(p, q, alpha);
}

DiophantineEstimate estimate_kappa(const FixedReal& alpha, const Integer& q_max) {
  if (q_max < 2) throw InvalidInput("estimate_kappa needs q_max >= 2");
  if (alpha.known_rational()) {
    throw RationalDetected("estimate_kappa: input is rational (continued fraction terminates)");
  }
  DiophantineEstimate est;
  est.q_max = q_max;

  ContinuedFractionExpander ex(alpha);
  while (true) {
    ex.next();
    if (ex.q() > q_max) break;
    Convergent c = make_convergent(ex.p(), ex.q(), alpha);
    if (c.dist.sign() == 0) {
      throw RationalDetected("estimate_kappa: convergent hits alpha exactly");
    }
    est.convergents.push_back(std::move(c));
  }

  std::vector<double> xs, ys;
  for (const Convergent& c : est.convergents) {
    if (c.q < 2) continue;
    const double lq = std::log(c.q.get_d());
    const double ld = -log_abs(c.dist);
    est.per_convergent.push_back({c.q, ld / lq});
    xs.push_back(lq);
    ys.push_back(ld);
  }
  if (xs.empty()) throw InvalidInput("estimate_kappa: no convergent denominators in [2, q_max]");

  double slope = est.per_convergent.front().kappa;
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    slope = sxy / sxx;
  }
  est.kappa_hat = std::max(1.0, slope);

  double log_c = std::numeric_limits<double>::infinity();
  for (const Convergent& c : est.convergents) {
    log_c = std::min(log_c, log_abs(c.dist) + est.kappa_hat * std::log(c.q.get_d()));
  }
  // Shaved so that re-evaluating the certificate in floating point holds.
  est.c_hat = std::exp(log_c) * (1.0 - 1e-12);
  return est;
}

FixedReal directional_coefficient(const ShiftVector& xi, const Integer& a, const Integer& c) {
  return xi.alpha * Integer(a * a) + xi.beta * Integer(a * c) + xi.gamma * Integer(c * c);
}

DirectionChoice evaluate_direction(const ShiftVector& xi, const Integer& a, const Integer& c,
                                   const Integer& q_max) {
  if (gcd(a, c) != 1) throw InvalidInput("direction (a, c) must be coprime");
  FixedReal alpha_tilde = directional_coefficient(xi, a, c);
  DiophantineEstimate est = estimate_kappa(alpha_tilde, q_max);
  return {a, c, std::move(alpha_tilde), std::move(est)};
}

DirectionChoice diophantine_direction(const ShiftVector& xi, long bound, const Integer& q_max,
                                      int threads) {
  if (bound < 1) throw InvalidInput("direction bound must be >= 1");
  std::vector<std::pair<long, long>> candidates;
  for (long a = 0; a <= bound; ++a) {
    for (long c = -bound; c <= bound; ++c) {
      if (a == 0 && c <= 0) continue;
      if (gcd(Integer(a), Integer(c)) != 1) continue;
      candidates.emplace_back(a, c);
    }
  }

  std::vector<std::optional<DirectionChoice>> results(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    try {
      results[i] = evaluate_direction(xi, candidates[i].first, candidates[i].second, q_max);
    } catch (const RationalDetected&) {
      // Rational coefficient: not a usable direction.
    }
  });

  const DirectionChoice* best = nullptr;
  auto weight = [](const DirectionChoice& d) { return Integer(abs(d.a) + abs(d.c)); };
  for (const auto& r : results) {
    if (!r) continue;
    if (best == nullptr) {
      best = &*r;
      continue;
    }
    const double k = r->estimate.kappa_hat, kb = best->estimate.kappa_hat;
    if (k < kb) {
      best = &*r;
    } else if (k == kb) {
      const int w = cmp(weight(*r), weight(*best));
      // Candidates are enumerated in lexicographic order, so on a full tie
      // the earlier one stays.
      if (w < 0) best = &*r;
    }
  }
  if (best == nullptr) throw AllRational("every candidate direction gives a rational coefficient");
  return *best;
}

}  // namespace qfdense
