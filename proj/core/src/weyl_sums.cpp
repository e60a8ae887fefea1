#include "qfdense/weyl_sums.hpp"

#include <cmath>
#include <numbers>

#include "phase_walker.hpp"
#include "qfdense/diophantine.hpp"
#include "qfdense/errors.hpp"
#include "qfdense/parallel.hpp"

namespace qfdense {

namespace {

using detail::PhaseWalker;

// Neumaier's compensated summation.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Phasor {
  double re, im;
};

// e(theta) for theta in [0, 1); exact at quarter turns.
Phasor unit_phasor(double theta) {
  const double quarter = std::nearbyint(4.0 * theta);
  const double r = theta - 0.25 * quarter;
  const double c = std::cos(2.0 * std::numbers::pi * r);
  const double s = std::sin(2.0 * std::numbers::pi * r);
  switch (static_cast<int>(quarter) & 3) {
    case 0:
      return {c, s};
    case 1:
      return {-s, c};
    case 2:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

struct ChunkRange {
  std::int64_t first, last;  // inclusive
};

std::vector<ChunkRange> chunk_ranges(std::int64_t first, std::int64_t last) {
  std::vector<ChunkRange> chunks;
  for (std::int64_t lo = first; lo <= last; lo += kScanChunk) {
    chunks.push_back({lo, std::min(last, lo + kScanChunk - 1)});
  }
  return chunks;
}

// Circle distance between a reduced coordinate and a target, in double.
double wrap_dist(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

// sum_{m=1}^{count} min(1/||m step||, cap), each norm replaced by a
// certified lower bound.
double sum_min_linear(const FixedReal& step, std::int64_t count, double cap,
                      const ScanOptions& opts, const char* what) {
  if (count <= 0) return 0.0;
  const int bits = step.frac_bits();
  const FixedReal zero(bits);
  detail::require_walk_precision(zero, step, zero, count, opts.log2_tol, what);
  const Integer one = pow2(static_cast<unsigned long>(bits));
  const auto chunks = chunk_ranges(1, count);
  std::vector<CompensatedSum> partial(chunks.size());
  parallel_for(chunks.size(), opts.threads, [&](std::size_t ci) {
    PhaseWalker walk(zero, step, zero, chunks[ci].first);
    Integer r;
    CompensatedSum acc;
    for (std::int64_t m = chunks[ci].first; m <= chunks[ci].last; ++m) {
      r = walk.value();
      if (cmp(2 * r, one) > 0) r = one - r;
      r -= walk.error();
      double term = cap;
      if (sgn(r) > 0) {
        long e = 0;
        const double d = mpz_get_d_2exp(&e, r.get_mpz_t());
        const double x = std::ldexp(d, static_cast<int>(e) - bits);
        if (x * cap > 1.0) term = 1.0 / x;
      }
      acc.add(term);
      walk.advance();
    }
    partial[ci] = acc;
  });
  CompensatedSum total;
  for (const auto& p : partial) {
    total.add(p.sum);
    total.add(p.comp);
  }
  return total.value();
}

}  // namespace

TorusPoint2 TorusPoint2::reduce(const FixedReal& x, const FixedReal& y) {
  return {x.frac(), y.frac()};
}

double WeylSumResult::abs() const { return std::hypot(re, im); }

TorusPoint2 phi(const FixedReal& alpha, const FixedReal& beta, const FixedReal& gamma,
                std::int64_t m, int log2_tol) {
  const Integer mm = to_integer(m);
  FixedReal x = alpha * Integer(2 * mm) + beta;
  FixedReal y = alpha * Integer(mm * mm) + beta * mm + gamma;
  x.require_error_within(log2_tol, "phi (linear coordinate)");
  y.require_error_within(log2_tol, "phi (quadratic coordinate)");
  return TorusPoint2::reduce(x, y);
}

double torus_dist(const TorusPoint2& u, const TorusPoint2& v) {
  const FixedReal dx = (u.x - v.x).circle_norm();
  const FixedReal dy = (u.y - v.y).circle_norm();
  return std::sqrt((dx * dx + dy * dy).to_double());
}

OrbitCount count_orbit_hits(const FixedReal& alpha, const FixedReal& beta,
                            const FixedReal& gamma, const TorusPoint2& v0, std::int64_t T,
                            double delta, const ScanOptions& opts, bool record_hits) {
  if (T < 1) throw InvalidInput("count_orbit_hits needs T >= 1");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("count_orbit_hits needs 0 < delta < 1/2");
  const int bits = alpha.frac_bits();
  const FixedReal two_alpha = alpha * Integer(2);
  const FixedReal zero(bits);
  detail::require_walk_precision(zero, two_alpha, beta, T, opts.log2_tol, "count_orbit_hits");
  detail::require_walk_precision(alpha, beta, gamma, T, opts.log2_tol, "count_orbit_hits");

  const double x0 = v0.x.to_double(), y0 = v0.y.to_double();
  const double delta_sq = delta * delta;
  // Covers double rounding of the coordinates plus the (tolerance-bounded)
  // tracked error; anything closer to the boundary is decided exactly.
  const double margin = 1e-9;
  const FixedReal delta_fx = FixedReal::from_double(delta, bits);
  const FixedReal delta_fx_sq = delta_fx * delta_fx;

  const auto chunks = chunk_ranges(1, T);
  std::vector<OrbitCount> partial(chunks.size());
  parallel_for(chunks.size(), opts.threads, [&](std::size_t ci) {
    PhaseWalker wx(zero, two_alpha, beta, chunks[ci].first);
    PhaseWalker wy(alpha, beta, gamma, chunks[ci].first);
    OrbitCount& out = partial[ci];
    for (std::int64_t m = chunks[ci].first; m <= chunks[ci].last; ++m) {
      const double dx = wrap_dist(wx.to_double(), x0);
      const double dy = wrap_dist(wy.to_double(), y0);
      const double d2 = dx * dx + dy * dy;
      bool hit;
      if (d2 < delta_sq - margin) {
        hit = true;
      } else if (d2 > delta_sq + margin) {
        hit = false;
      } else {
        const TorusPoint2 p = phi(alpha, beta, gamma, m, opts.log2_tol);
        const FixedReal ex = (p.x - v0.x).circle_norm();
        const FixedReal ey = (p.y - v0.y).circle_norm();
        hit = certified_le(ex * ex + ey * ey, delta_fx_sq, "count_orbit_hits boundary");
      }
      if (hit) {
        ++out.count;
        if (record_hits) out.hits.push_back(m);
      }
      wx.advance();
      wy.advance();
    }
  });

  OrbitCount total;
  for (auto& p : partial) {
    total.count += p.count;
    total.hits.insert(total.hits.end(), p.hits.begin(), p.hits.end());
  }
  return total;
}

WeylSumResult weyl_sum(std::int64_t n, const FixedReal& alpha, const FixedReal& beta,
                       std::int64_t T, const ScanOptions& opts) {
  if (T < 0) throw InvalidInput("weyl_sum needs T >= 0");
  const int bits = alpha.frac_bits();
  const FixedReal quad = alpha * to_integer(n);
  const FixedReal zero(bits);
  detail::require_walk_precision(quad, beta, zero, T, opts.log2_tol, "weyl_sum");

  struct Partial {
    CompensatedSum re, im;
  };
  const auto chunks = chunk_ranges(1, T);
  std::vector<Partial> partial(chunks.size());
  parallel_for(chunks.size(), opts.threads, [&](std::size_t ci) {
    PhaseWalker walk(quad, beta, zero, chunks[ci].first);
    Partial& out = partial[ci];
    for (std::int64_t m = chunks[ci].first; m <= chunks[ci].last; ++m) {
      const Phasor z = unit_phasor(walk.to_double());
      out.re.add(z.re);
      out.im.add(z.im);
      walk.advance();
    }
  });
  CompensatedSum re, im;
  for (const auto& p : partial) {
    re.add(p.re.sum);
    re.add(p.re.comp);
    im.add(p.im.sum);
    im.add(p.im.comp);
  }
  return {re.value(), im.value(), T, n};
}

double weyl_differencing_bound(std::int64_t n, const FixedReal& alpha, std::int64_t T,
                               const ScanOptions& opts) {
  if (T < 1) throw InvalidInput("weyl_differencing_bound needs T >= 1");
  const FixedReal step = alpha * to_integer(2 * n);
  const double t = static_cast<double>(T);
  return t + 2.0 * sum_min_linear(step, T, t, opts, "weyl_differencing_bound");
}

double sum_min(const FixedReal& alpha, std::int64_t M, std::int64_t T, const ScanOptions& opts) {
  if (T < 1 || M < 0) throw InvalidInput("sum_min needs T >= 1 and M >= 0");
  return sum_min_linear(alpha, M * T, static_cast<double>(T), opts, "sum_min");
}

double sum_min_explicit_bound(const FixedReal& alpha, std::int64_t M, std::int64_t T) {
  if (T < 2 || M < 0) throw InvalidInput("sum_min_explicit_bound needs T >= 2 and M >= 0");
  const Convergent c = dirichlet_approx(alpha, to_integer(T));
  const double q = c.q.get_d();
  const double m = static_cast<double>(M), t = static_cast<double>(T);
  return 4.0 * m * t * t / q + 8.0 * (m + 1.0) * t * std::log(t);
}

}  // namespace qfdense
