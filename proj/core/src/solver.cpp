#include "qfdense/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qfdense/errors.hpp"
#include "qfdense/parallel.hpp"

namespace qfdense {

namespace {

constexpr std::int64_t kSolverChunk = 1024;

std::int64_t scan_length(double scan_c, std::int64_t T) {
  return static_cast<std::int64_t>(std::floor(scan_c * std::sqrt(static_cast<double>(T))));
}

FixedReal exact_product(double x, double y, int bits) {
  return FixedReal::from_double(x, bits) * FixedReal::from_double(y, bits);
}

// One m of the construction, before the filters on the original vector.
struct Candidate {
  Offset offset;
  IntVec3 v, original;
};

Candidate construct(const ShiftVector& xi_work, std::int64_t m, const TargetLift& eta,
                    const std::optional<SOQMatrix>& frame_inv, int log2_tol) {
  const Integer mm = to_integer(m);
  Candidate c{nearest_offset(xi_work, mm, eta, log2_tol), {}, {}};
  const IntVec3& u = c.offset.u;
  c.v = qfdense::apply(u, unipotent(-mm));
  const IntVec3 expected{0, u[1], u[2] - mm * u[1]};
  if (c.v != expected) throw Error("solver: u M_m^{-1} does not match (0, a, b - m a)");
  c.original = frame_inv ? qfdense::apply(c.v, *frame_inv) : c.v;
  return c;
}

FixedReal residual_at(const TernaryForm& q, const ShiftVector& xi, const FixedReal& t,
                      const IntVec3& v, int log2_tol) {
  return (evaluate_shifted(q, xi, v, log2_tol) - t).abs();
}

struct Lattice {
  std::int64_t v1, v2, v3;
  IntVec3 to_vec() const { return {to_integer(v1), to_integer(v2), to_integer(v3)}; }
};

std::int64_t isqrt64(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct BallScan {
  std::int64_t count = 0;
  std::vector<IntVec3> members;
  FixedReal min_residual;
  IntVec3 argmin;
};

// Shared lattice walk for the oracle count and the exponent estimate. With
// no delta only the minimum is tracked.
BallScan scan_ball(const TernaryForm& q, const ShiftVector& xi, const FixedReal& t,
                   std::int64_t T, std::optional<double> delta, const OracleOptions& opts) {
  if (T < 0) throw InvalidInput("brute-force scan needs T >= 0");
  if (T > opts.cap) {
    throw CapExceeded("brute-force scan: T = " + std::to_string(T) + " exceeds the cap " +
                      std::to_string(opts.cap));
  }
  if (delta && !(*delta >= 0.0 && std::isfinite(*delta))) {
    throw InvalidInput("brute-force scan needs a finite delta >= 0");
  }
  const int bits = xi.frac_bits();
  double g[3][3], s[3];
  for (int i = 0; i < 3; ++i) {
    s[i] = xi[static_cast<std::size_t>(i)].to_double();
    for (int j = 0; j < 3; ++j) g[i][j] = q.gram()[i][j].get_d();
  }
  const double td = t.to_double();
  const FixedReal delta_fx = FixedReal::from_double(delta.value_or(0.0), bits);

  struct Slab {
    std::int64_t count = 0;
    std::vector<IntVec3> members;
    // Points that may attain the minimum: (v, r - eps).
    std::vector<std::pair<Lattice, double>> candidates;
    double upper = std::numeric_limits<double>::infinity();
  };
  std::vector<Slab> slabs(static_cast<std::size_t>(2 * T + 1));

  parallel_for(slabs.size(), opts.threads, [&](std::size_t si) {
    Slab& out = slabs[si];
    const std::int64_t v1 = static_cast<std::int64_t>(si) - T;
    const std::int64_t r1 = T * T - v1 * v1;
    const std::int64_t b2 = isqrt64(r1);
    const double x1 = static_cast<double>(v1) + s[0];
    for (std::int64_t v2 = -b2; v2 <= b2; ++v2) {
      const std::int64_t b3 = isqrt64(r1 - v2 * v2);
      const double x2 = static_cast<double>(v2) + s[1];
      for (std::int64_t v3 = -b3; v3 <= b3; ++v3) {
        const double x3 = static_cast<double>(v3) + s[2];
        const double x[3] = {x1, x2, x3};
        double qv = 0.0, spread = 0.0;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            qv += g[i][j] * x[i] * x[j];
            spread += std::abs(g[i][j] * x[i] * x[j]);
          }
        }
        const double r = std::abs(qv - td);
        const double eps = 1e-12 * (spread + std::abs(td) + 1.0);
        const Lattice p{v1, v2, v3};

        if (delta) {
          bool hit;
          if (r + eps < *delta) {
            hit = true;
          } else if (r - eps > *delta) {
            hit = false;
          } else {
            hit = certified_le(residual_at(q, xi, t, p.to_vec(), opts.log2_tol), delta_fx,
                               "brute-force count boundary");
          }
          if (hit) {
            ++out.count;
            if (opts.collect_members) out.members.push_back(p.to_vec());
          }
        }
        if (r - eps <= out.upper) {
          out.candidates.emplace_back(p, r - eps);
          out.upper = std::min(out.upper, r + eps);
        }
      }
    }
  });

  BallScan res;
  double upper = std::numeric_limits<double>::infinity();
  for (const Slab& sl : slabs) upper = std::min(upper, sl.upper);
  bool have = false;
  for (Slab& sl : slabs) {
    res.count += sl.count;
    res.members.insert(res.members.end(), std::make_move_iterator(sl.members.begin()),
                       std::make_move_iterator(sl.members.end()));
    for (const auto& [p, lower] : sl.candidates) {
      if (lower > upper) continue;
      const IntVec3 v = p.to_vec();
      FixedReal r = residual_at(q, xi, t, v, opts.log2_tol);
      // Visited in lexicographic order: only a certified improvement wins,
      // so indistinguishable residuals keep the least v.
      if (!have || certified_compare(r, res.min_residual) == std::partial_ordering::less) {
        res.min_residual = std::move(r);
        res.argmin = v;
        have = true;
      }
    }
  }
  return res;
}

void require_increasing_grid(const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw InvalidInput("exponent grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) throw InvalidInput("exponent grid entries must be >= 2");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw InvalidInput("exponent grid must be strictly increasing");
    }
  }
}

// Minimum residual over the solver's m-scan with every vector inside the
// ball accepted (delta relaxed to the best achieved).
FixedReal solver_min_residual(const ShiftVector& xi, const FixedReal& t, std::int64_t T,
                              const ExponentParams& params) {
  const int tol = params.scan.log2_tol;
  const ShiftVector xi_work = params.frame ? qfdense::apply(xi, *params.frame, tol) : xi;
  std::optional<SOQMatrix> frame_inv;
  if (params.frame) frame_inv = params.frame->inverse();
  const TargetLift eta = target_lift(xi_work.alpha, t, tol);
  const std::int64_t m_max = scan_length(params.scan_c, T);
  if (m_max < 1) throw InvalidInput("solver-mode exponent: scan_c sqrt(T) < 1");
  const Integer t_sq = to_integer(T) * to_integer(T);

  const std::size_t n_chunks = static_cast<std::size_t>((m_max + kSolverChunk - 1) / kSolverChunk);
  std::vector<std::optional<FixedReal>> best(n_chunks);
  parallel_for(n_chunks, params.scan.threads, [&](std::size_t ci) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(ci) * kSolverChunk;
    const std::int64_t hi = std::min(m_max, lo + kSolverChunk - 1);
    for (std::int64_t m = lo; m <= hi; ++m) {
      const Candidate c = construct(xi_work, m, eta, frame_inv, tol);
      if (norm_sq(c.original) > t_sq) continue;
      FixedReal r = residual_at(TernaryForm::standard(), xi, t, c.original, tol);
      if (!best[ci] || certified_compare(r, *best[ci]) == std::partial_ordering::less) {
        best[ci] = std::move(r);
      }
    }
  });
  std::optional<FixedReal> out;
  for (auto& b : best) {
    if (b && (!out || certified_compare(*b, *out) == std::partial_ordering::less)) out = b;
  }
  if (!out) throw InvalidInput("solver-mode exponent: no scanned vector lies in the ball");
  return *out;
}

}  // namespace

TargetLift target_lift(const FixedReal& alpha, const FixedReal& t, int log2_tol) {
  int s = 0;
  try {
    s = alpha.sign();
  } catch (const PrecisionExhausted&) {
    throw AlphaZero("target_lift: alpha is indistinguishable from 0");
  }
  const auto t_exact = t.known_rational();
  const bool t_zero = t_exact && *t_exact == 0;
  const int bits = alpha.frac_bits();
  const FixedReal y(bits);
  // Any z lifts t = 0 when alpha = 0; take z = 0.
  if (s == 0 && t_zero) return {alpha, y, y, t};
  if (s == 0) throw AlphaZero("target_lift: alpha is 0");
  const FixedReal z = t_zero ? y : -(t / (alpha * Integer(4)));
  const FixedReal defect = y * y - alpha * Integer(4) * z - t;
  defect.require_error_within(log2_tol, "target_lift");
  if (cmp(abs(defect.mantissa()), defect.error_ulps()) > 0) {
    throw Error("target_lift: y^2 - 4 alpha z = t fails");
  }
  return {alpha, y, z, t};
}

Offset nearest_offset(const ShiftVector& xi, const Integer& m, const TargetLift& eta,
                      int log2_tol) {
  const int bits = xi.frac_bits();
  const ShiftVector w = qfdense::apply(xi, unipotent(m), log2_tol);
  const FixedReal d2 = w.beta - eta.y;
  const FixedReal d3 = w.gamma - eta.z;
  const Integer a = -d2.round_half_even();
  const Integer b = -d3.round_half_even();
  const FixedReal e2 = d2 + FixedReal::from_integer(a, bits);
  const FixedReal e3 = d3 + FixedReal::from_integer(b, bits);
  Offset out{{0, a, b}, e2 * e2 + e3 * e3, 0.0};
  out.miss = std::sqrt(out.miss_sq.to_double());
  return out;
}

SolveReport find_solutions(const ShiftVector& xi, const FixedReal& t, const SolveParams& params,
                           const ScanOptions& opts) {
  if (params.T < 4) throw InvalidInput("find_solutions needs T >= 4");
  if (!(params.delta > 0.0 && params.delta < 0.5)) {
    throw InvalidInput("find_solutions needs 0 < delta < 1/2");
  }
  if (!(params.scan_c > 0.0 && std::isfinite(params.scan_c))) {
    throw InvalidInput("find_solutions needs scan_c > 0");
  }
  if (!(params.bound_C >= 1.0 && std::isfinite(params.bound_C))) {
    throw InvalidInput("find_solutions needs bound_C >= 1");
  }
  const int bits = xi.frac_bits();
  const int tol = opts.log2_tol;
  const ShiftVector xi_work = params.frame ? qfdense::apply(xi, *params.frame, tol) : xi;
  std::optional<SOQMatrix> frame_inv;
  if (params.frame) frame_inv = params.frame->inverse();
  const TargetLift eta = target_lift(xi_work.alpha, t, tol);

  SolveReport report;
  report.params = params;
  const std::int64_t m_max = scan_length(params.scan_c, params.T);
  if (m_max < 1) return report;
  qfdense::apply(xi_work, unipotent(to_integer(m_max)), tol);

  const FixedReal keep = exact_product(params.scan_c, params.delta, bits);
  const FixedReal keep_sq = keep * keep;
  const FixedReal bound = exact_product(params.bound_C, params.delta, bits);
  const Integer t_sq = to_integer(params.T) * to_integer(params.T);

  const std::size_t n_chunks = static_cast<std::size_t>((m_max + kSolverChunk - 1) / kSolverChunk);
  std::vector<std::vector<Solution>> partial(n_chunks);
  parallel_for(n_chunks, opts.threads, [&](std::size_t ci) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(ci) * kSolverChunk;
    const std::int64_t hi = std::min(m_max, lo + kSolverChunk - 1);
    for (std::int64_t m = lo; m <= hi; ++m) {
      Candidate c = construct(xi_work, m, eta, frame_inv, tol);
      if (!certified_le(c.offset.miss_sq, keep_sq, "solver torus miss")) continue;
      if (norm_sq(c.original) > t_sq) continue;
      FixedReal value = evaluate_shifted(TernaryForm::standard(), xi, c.original, tol);
      FixedReal residual = (value - t).abs();
      if (!certified_le(residual, bound, "solver residual")) continue;
      partial[ci].push_back({m, std::move(c.offset.u), std::move(c.v), std::move(c.original),
                             std::move(value), std::move(residual), c.offset.miss});
    }
  });

  std::set<IntVec3> seen;
  for (auto& chunk : partial) {
    for (auto& s : chunk) {
      if (seen.insert(s.original).second) report.solutions.push_back(std::move(s));
    }
  }
  return report;
}

OracleResult count_values_bruteforce(const TernaryForm& q, const ShiftVector& xi,
                                     const FixedReal& t, std::int64_t T, double delta,
                                     const OracleOptions& opts) {
  BallScan scan = scan_ball(q, xi, t, T, delta, opts);
  return {scan.count, std::move(scan.min_residual), std::move(scan.argmin),
          std::move(scan.members)};
}

std::vector<ExponentRow> estimate_critical_exponent(const ShiftVector& xi, const FixedReal& t,
                                                    const std::vector<std::int64_t>& grid,
                                                    const ExponentParams& params) {
  require_increasing_grid(grid);
  if (params.mode == ExponentMode::oracle && grid.back() > params.oracle.cap) {
    throw CapExceeded("exponent grid exceeds the brute-force cap " +
                      std::to_string(params.oracle.cap));
  }
  std::vector<ExponentRow> rows;
  for (const std::int64_t T : grid) {
    ExponentRow row;
    row.T = T;
    if (params.mode == ExponentMode::oracle) {
      row.min_residual =
          scan_ball(TernaryForm::standard(), xi, t, T, std::nullopt, params.oracle).min_residual;
    } else {
      row.min_residual = solver_min_residual(xi, t, T, params);
    }
    if (row.min_residual.sign() != 0) {
      row.omega_hat = -log_abs(row.min_residual) / std::log(static_cast<double>(T));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qfdense
